#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "simo/control.hpp"
#include "simo/lqr.hpp"
#include "simo/model.hpp"

namespace simo {

enum class ControllerKind { sfr_continuous, pd_continuous, pd_discrete, sfr_discrete };

std::string_view to_string(ControllerKind kind) noexcept;
std::optional<ControllerKind> parse_controller_kind(std::string_view name) noexcept;
[[nodiscard]] constexpr bool is_sampled(ControllerKind kind) noexcept {
    return kind == ControllerKind::pd_discrete || kind == ControllerKind::sfr_discrete;
}

inline constexpr double divergence_bound = 1e6;

// One closed-loop experiment. Initial state and reference are given in the
// plant's display units (degrees for the robot tilt).
struct ScenarioConfig {
    std::string name;
    ControllerKind controller = ControllerKind::sfr_continuous;
    VectorXd initial_state;
    double duration = 25.0;     // s
    double step = 1e-3;         // integrator step, s
    double sample_time = 0.1;   // T_s for sampled controllers, s
    double filter_n = 10.0;     // derivative filter coefficient
    std::optional<bool> saturate;  // unset: on for sampled controllers only
    Saturation saturation;
    VectorXd reference;  // length q; empty means zero

    [[nodiscard]] bool saturation_enabled() const noexcept {
        return saturate.value_or(is_sampled(controller));
    }
    // Throws ErrorKind::configuration.
    void validate(const AffineSystem& sys) const;
};

struct Trajectory {
    std::string scenario;
    ControllerKind controller = ControllerKind::sfr_continuous;
    std::optional<double> sample_time;
    std::optional<Saturation> saturation;
    double step = 0.0;
    std::vector<StateDisplay> display;

    VectorXd time;       // uniform grid, s
    MatrixXd states;     // rows = samples, internal units
    VectorXd control;    // applied (post-saturation) control, V
    MatrixXd reference;  // rows = samples, internal units

    bool diverged = false;
    std::string diagnostic;

    [[nodiscard]] Eigen::Index size() const noexcept { return time.size(); }
};

using Dynamics = std::function<VectorXd(const VectorXd&, double)>;

// Classical fourth-order Runge-Kutta with u held over the step. Throws
// ErrorKind::divergence (naming time t) when the result is not finite.
VectorXd rk4_step(const Dynamics& f, const VectorXd& x, double u, double dt, double t = 0.0);

// Fixed-step closed-loop run. Continuous laws are evaluated at every
// integrator step; sampled laws every T_s with zero-order hold in between.
// On divergence the partial trajectory is returned with diverged = true.
Trajectory simulate(const AffineSystem& plant, const GainSet& gains, const ScenarioConfig& scenario);

struct SettlingReport {
    std::optional<double> x1_settling;  // s; empty when never settled
    std::optional<double> x2_settling;
    double max_abs_u = 0.0;
    double saturation_fraction = 0.0;  // share of samples sitting on a limit
};

// Bands are in display units (default 0.1 deg, 1 mm). Settling time is the
// first sample after the last excursion outside the band.
SettlingReport settling_metrics(const Trajectory& traj, double band_x1 = 0.1, double band_x2 = 1e-3);

// Trapezoidal integral of x'Qx + R u^2 (internal units).
double quadratic_cost(const Trajectory& traj, const LqrWeights& weights);

// t,<state labels>,u_V,<reference labels>; full-precision decimal.
std::string csv_header(const Trajectory& traj);
void write_csv(const Trajectory& traj, std::ostream& out);

}  // namespace simo
