#include "simo/robot.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "simo/error.hpp"

namespace simo::robot {

void RobotParams::validate() const {
    const std::array<std::pair<const char*, double>, 11> values{{{"I_n", I_n},
                                                                 {"I_k", I_k},
                                                                 {"m_n", m_n},
                                                                 {"m_k", m_k},
                                                                 {"l", l},
                                                                 {"R", R},
                                                                 {"r", r},
                                                                 {"k", k},
                                                                 {"k_e", k_e},
                                                                 {"k_m", k_m},
                                                                 {"g", g}}};
    for (const auto& [name, v] : values) {
        if (!std::isfinite(v) || !(v > 0.0))
            fail(ErrorKind::configuration, std::string("robot parameter ") + name + " must be positive");
    }
    const double a1 = I_n + m_n * l * l;
    const double a2 = 2.0 * I_k / (r * r) + 2.0 * m_k + m_n;
    if (!(a1 * a2 > (m_n * l) * (m_n * l)))
        fail(ErrorKind::configuration, "robot parameters give a singular mass matrix");
}

double RobotParams::angle_scale() const noexcept {
    return angle_unit == AngleUnit::degrees ? std::numbers::pi / 180.0 : 1.0;
}

std::array<double, 7> alphas(const RobotParams& p, const Vector4& x) {
    const double theta = p.angle_scale() * x[0];
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double a1 = p.I_n + p.m_n * p.l * p.l;
    const double a2 = 2.0 * p.I_k / (p.r * p.r) + 2.0 * p.m_k + p.m_n;
    const double a3 = -p.m_n * p.l * c;
    const double a4 = -2.0 * p.k_m / p.R;
    const double a5 = 2.0 * p.k * p.k_m / (p.R * p.r);
    const double a6 = 2.0 * x[3] * p.k * p.k_e * p.k_m / (p.R * p.r) -
                      2.0 * x[2] * p.k_e * p.k_m / p.R + p.m_n * p.g * p.l * s;
    const double a7 = 2.0 * x[2] * p.k * p.k_e * p.k_m / (p.R * p.r) -
                      2.0 * x[3] * p.k * p.k * p.k_e * p.k_m / (p.R * p.r * p.r) +
                      p.m_n * p.l * x[2] * x[2] * s;
    return {a1, a2, a3, a4, a5, a6, a7};
}

double mass_determinant(const RobotParams& p, const Vector4& x) {
    const auto a = alphas(p, x);
    return a[0] * a[1] - a[2] * a[2];
}

ForcedTerms forced_terms(const RobotParams& p, const Vector4& x) {
    const auto [a1, a2, a3, a4, a5, a6, a7] = alphas(p, x);
    ForcedTerms t;
    t.H3 = a2 * a6 + a3 * a7;
    t.H4 = a3 * a6 + a1 * a7;
    t.P3 = a2 * a4 + a3 * a5;
    t.P4 = a3 * a4 + a1 * a5;
    t.M = a1 * a2 - a3 * a3;
    return t;
}

Vector4 robot_dynamics(const RobotParams& p, const Vector4& x, double u) {
    const ForcedTerms t = forced_terms(p, x);
    if (std::abs(t.M) < 1e-12) fail(ErrorKind::numerical_domain, "robot mass matrix is singular");
    return {x[2], x[3], (t.H3 + t.P3 * u) / t.M, (t.H4 + t.P4 * u) / t.M};
}

Matrix4 robot_jacobian(const RobotParams& p, const Vector4& x) {
    const double sc = p.angle_scale();
    const double theta = sc * x[0];
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const auto [a1, a2, a3, a4, a5, a6, a7] = alphas(p, x);
    (void)a4;
    (void)a5;

    const double ml = p.m_n * p.l;
    const double c34 = 2.0 * p.k * p.k_e * p.k_m / (p.R * p.r);  // x4 in a6, x3 in a7
    const double c33 = 2.0 * p.k_e * p.k_m / p.R;
    const double c44 = 2.0 * p.k * p.k * p.k_e * p.k_m / (p.R * p.r * p.r);

    // d/dx of a3, a6, a7 (x2 never appears).
    const Vector4 da3{ml * s * sc, 0.0, 0.0, 0.0};
    const Vector4 da6{p.m_n * p.g * p.l * c * sc, 0.0, -c33, c34};
    const Vector4 da7{ml * x[2] * x[2] * c * sc, 0.0, c34 + 2.0 * ml * x[2] * s, -c44};

    const double M = a1 * a2 - a3 * a3;
    const double H3 = a2 * a6 + a3 * a7;
    const double H4 = a3 * a6 + a1 * a7;
    const Vector4 dM = -2.0 * a3 * da3;
    const Vector4 dH3 = a2 * da6 + a7 * da3 + a3 * da7;
    const Vector4 dH4 = a6 * da3 + a3 * da6 + a1 * da7;

    Matrix4 J = Matrix4::Zero();
    J(0, 2) = 1.0;
    J(1, 3) = 1.0;
    J.row(2) = ((dH3 * M - H3 * dM) / (M * M)).transpose();
    J.row(3) = ((dH4 * M - H4 * dM) / (M * M)).transpose();
    return J;
}

AffineSystem make_robot_system(const RobotParams& p) {
    p.validate();
    auto as4 = [](const VectorXd& x) -> Vector4 {
        require(x.size() == 4, "robot state has 4 components");
        return x;
    };
    AffineSystem sys(
        "balancing-robot", 2,
        [p, as4](const VectorXd& x) -> VectorXd { return robot_dynamics(p, as4(x), 0.0); },
        [p, as4](const VectorXd& x) -> VectorXd {
            const ForcedTerms t = forced_terms(p, as4(x));
            return Vector4{0.0, 0.0, t.P3 / t.M, t.P4 / t.M};
        },
        [p, as4](const VectorXd& x) -> MatrixXd { return robot_jacobian(p, as4(x)); }, true);

    const double deg_per_unit = p.angle_unit == AngleUnit::degrees ? 1.0 : 180.0 / std::numbers::pi;
    sys.set_display({{"x1_deg", deg_per_unit}, {"x2_m", 1.0}, {"x3_degps", deg_per_unit}, {"x4_mps", 1.0}});

    VectorXd limits = VectorXd::Constant(4, std::numeric_limits<double>::infinity());
    limits[0] = 180.0 / deg_per_unit;
    sys.set_state_limits(limits);
    return sys;
}

}  // namespace simo::robot
