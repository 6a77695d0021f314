#pragma once

#include <array>

#include <Eigen/Dense>

#include "simo/model.hpp"

namespace simo::robot {

using Vector4 = Eigen::Vector4d;
using Matrix4 = Eigen::Matrix4d;

// Unit of the tilt states x1 (angle) and x3 (angular rate).
//
// degrees: x1 in deg, x3 in deg/s, and the trigonometric terms convert x1 to
//          radians. The rate x3 enters the motor damping terms unconverted.
//          This is the convention under which the published linear model,
//          LQR gains and trajectories of this robot were produced.
// radians: SI-consistent variant, x1 in rad and x3 in rad/s.
enum class AngleUnit { degrees, radians };

// Two-wheeled balancing robot. Defaults are the published values.
struct RobotParams {
    double I_n = 0.0112;       // body moment of inertia, kg m^2
    double I_k = 3.9337e-5;    // wheel moment of inertia, kg m^2
    double m_n = 1.12;         // body mass, kg
    double m_k = 0.125;        // wheel mass, kg
    double l = 0.1;            // distance to the centre of gravity, m
    double R = 2.1428;         // winding resistance, Ohm
    double r = 0.045;          // wheel radius, m
    double k = 34.014;         // gear ratio
    double k_e = 68.9655e-4;   // electro-mechanical constant, V s
    double k_m = 14.8850e-2;   // torque constant (stored as published, V s)
    double g = 9.81;           // m/s^2
    AngleUnit angle_unit = AngleUnit::degrees;

    // All strictly positive and alpha1 * alpha2 > (m_n l)^2, so M(x) > 0 everywhere.
    void validate() const;

    // Factor taking x1 (and x3) to radians: pi/180 or 1.
    [[nodiscard]] double angle_scale() const noexcept;
};

// alpha_1 .. alpha_7 (index 0 .. 6).
//   a1 = I_n + m_n l^2                a2 = 2 I_k / r^2 + 2 m_k + m_n
//   a3 = -m_n l cos(x1)               a4 = -2 k_m / R
//   a5 = 2 k k_m / (R r)
//   a6 = 2 x4 k k_e k_m / (R r) - 2 x3 k_e k_m / R + m_n g l sin(x1)
//   a7 = 2 x3 k k_e k_m / (R r) - 2 x4 k^2 k_e k_m / (R r^2) + m_n l x3^2 sin(x1)
std::array<double, 7> alphas(const RobotParams& p, const Vector4& x);

// Mass-matrix determinant M = a1 a2 - a3^2.
double mass_determinant(const RobotParams& p, const Vector4& x);

struct ForcedTerms {
    double H3, H4, P3, P4, M;
};

// Solution of the coupled body/wheel equations:
//   H3 = a2 a6 + a3 a7    H4 = a3 a6 + a1 a7
//   P3 = a2 a4 + a3 a5    P4 = a3 a4 + a1 a5
ForcedTerms forced_terms(const RobotParams& p, const Vector4& x);

// (x3, x4, H3/M + P3/M u, H4/M + P4/M u)
Vector4 robot_dynamics(const RobotParams& p, const Vector4& x, double u);

// Closed-form Jacobian of the drift (u = 0) part.
Matrix4 robot_jacobian(const RobotParams& p, const Vector4& x);

// Registers the robot as an AffineSystem with q = 2 outputs (tilt, position),
// analytic Jacobian, CSV display metadata and a |x1| <= 180 deg sanity bound.
AffineSystem make_robot_system(const RobotParams& p = {});

}  // namespace simo::robot
