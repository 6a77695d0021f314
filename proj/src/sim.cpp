#include "simo/sim.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "simo/error.hpp"

namespace simo {

namespace {

constexpr double kNoLimit = std::numeric_limits<double>::max();

constexpr std::array<std::pair<ControllerKind, std::string_view>, 4> kControllerNames{{
    {ControllerKind::sfr_continuous, "sfr_continuous"},
    {ControllerKind::pd_continuous, "pd_continuous"},
    {ControllerKind::pd_discrete, "pd_discrete"},
    {ControllerKind::sfr_discrete, "sfr_discrete"},
}};

bool is_integer_multiple(double value, double unit, long long& ratio) {
    ratio = std::llround(value / unit);
    return ratio >= 1 && std::abs(static_cast<double>(ratio) * unit - value) <= 1e-9 * std::max(1.0, value);
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string_view to_string(ControllerKind kind) noexcept {
    for (const auto& [k, name] : kControllerNames) {
        if (k == kind) return name;
    }
    return "unknown";
}

std::optional<ControllerKind> parse_controller_kind(std::string_view name) noexcept {
    for (const auto& [k, n] : kControllerNames) {
        if (n == name) return k;
    }
    return std::nullopt;
}

void ScenarioConfig::validate(const AffineSystem& sys) const {
    const std::string where = name.empty() ? "scenario" : "scenario '" + name + "'";
    auto bad = [&](const std::string& what) { fail(ErrorKind::configuration, where + ": " + what); };
    if (!std::isfinite(duration) || !(duration > 0.0)) bad("duration must be positive");
    if (!std::isfinite(step) || !(step > 0.0)) bad("integrator step must be positive");
    long long steps = 0;
    if (!is_integer_multiple(duration, step, steps)) bad("duration must be an integer multiple of the step");
    if (initial_state.size() != sys.state_dim())
        bad("initial state needs " + std::to_string(sys.state_dim()) + " components");
    if (!initial_state.allFinite()) bad("initial state must be finite");
    if (reference.size() != 0 && reference.size() != sys.output_dim())
        bad("reference needs " + std::to_string(sys.output_dim()) + " components");
    if (!reference.allFinite()) bad("reference must be finite");
    if (is_sampled(controller)) {
        long long ratio = 0;
        if (!std::isfinite(sample_time) || !(sample_time > 0.0)) bad("sample time must be positive");
        if (!is_integer_multiple(sample_time, step, ratio))
            bad("sample time must be an integer multiple of the integrator step");
    }
    if (controller == ControllerKind::pd_discrete && (!std::isfinite(filter_n) || !(filter_n > 0.0)))
        bad("filter coefficient N must be positive");
    if ((controller == ControllerKind::pd_continuous || controller == ControllerKind::pd_discrete) &&
        !sys.mechanical())
        bad("PD controllers need a mechanical plant (E xdot independent of u)");
    if (saturation_enabled()) saturation.validate();
}

VectorXd rk4_step(const Dynamics& f, const VectorXd& x, double u, double dt, double t) {
    require(dt > 0.0, "RK4 step must be positive");
    const VectorXd k1 = f(x, u);
    const VectorXd k2 = f(x + 0.5 * dt * k1, u);
    const VectorXd k3 = f(x + 0.5 * dt * k2, u);
    const VectorXd k4 = f(x + dt * k3, u);
    VectorXd next = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!next.allFinite()) {
        std::ostringstream msg;
        msg << "state became non-finite at t = " << t + dt << " s";
        fail(ErrorKind::divergence, msg.str());
    }
    return next;
}

Trajectory simulate(const AffineSystem& plant, const GainSet& gains, const ScenarioConfig& scenario) {
    scenario.validate(plant);
    const int n = plant.state_dim();
    const int q = plant.output_dim();
    require(gains.K.size() == n && gains.K_p.size() == q, "gain set does not match the plant");

    VectorXd scale(n);
    for (int i = 0; i < n; ++i) scale[i] = plant.display()[static_cast<std::size_t>(i)].scale;

    const VectorXd x0 = scenario.initial_state.cwiseQuotient(scale);
    const VectorXd c_ref =
        scenario.reference.size() == 0 ? VectorXd::Zero(q) : VectorXd(scenario.reference.cwiseQuotient(scale.head(q)));
    const bool use_sat = scenario.saturation_enabled();

    long long steps = 0;
    is_integer_multiple(scenario.duration, scenario.step, steps);
    long long hold = 1;
    if (is_sampled(scenario.controller)) is_integer_multiple(scenario.sample_time, scenario.step, hold);

    Trajectory traj;
    traj.scenario = scenario.name;
    traj.controller = scenario.controller;
    if (is_sampled(scenario.controller)) traj.sample_time = scenario.sample_time;
    if (use_sat) traj.saturation = scenario.saturation;
    traj.step = scenario.step;
    traj.display = plant.display();
    const Eigen::Index samples = steps + 1;
    traj.time.resize(samples);
    traj.states.resize(samples, n);
    traj.control.resize(samples);
    traj.reference = c_ref.transpose().replicate(samples, 1);

    const Dynamics f = [&plant](const VectorXd& x, double u) { return evaluate_dynamics(plant, x, u); };
    const MatrixXd E = plant.output_matrix();
    std::optional<DiscretePdState> pd;
    if (scenario.controller == ControllerKind::pd_discrete) {
        pd = DiscretePdState::make(gains, scenario.sample_time, scenario.filter_n,
                                   use_sat ? scenario.saturation : Saturation{-kNoLimit, kNoLimit});
    }

    VectorXd x = x0;
    double u_held = 0.0;
    Eigen::Index recorded = 0;
    for (long long k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) * scenario.step;
        double u = 0.0;
        try {
            switch (scenario.controller) {
                case ControllerKind::sfr_continuous:
                    u = control_sfr_ffr(x, c_ref, gains);
                    break;
                case ControllerKind::pd_continuous: {
                    const VectorXd e = c_ref - E * x;
                    const VectorXd e_dot = -(E * plant.drift(x));
                    u = control_pd_continuous(e, e_dot, gains);
                    break;
                }
                case ControllerKind::sfr_discrete:
                    if (k % hold == 0) u_held = control_sfr_ffr(x, c_ref, gains);
                    u = u_held;
                    break;
                case ControllerKind::pd_discrete:
                    if (k % hold == 0) {
                        auto [out, next] = step_discrete_pd(*pd, c_ref - E * x);
                        *pd = std::move(next);
                        u_held = out.u_raw;
                    }
                    u = u_held;
                    break;
            }
            if (use_sat) u = saturate(u, scenario.saturation);
        } catch (const Error& err) {
            traj.diverged = true;
            std::ostringstream msg;
            msg << err.what() << " (t = " << t << " s)";
            traj.diagnostic = msg.str();
            break;
        }

        traj.time[recorded] = t;
        traj.states.row(recorded) = x.transpose();
        traj.control[recorded] = u;
        ++recorded;
        if (k == steps) break;

        try {
            x = rk4_step(f, x, u, scenario.step, t);
        } catch (const Error& err) {
            traj.diverged = true;
            traj.diagnostic = err.what();
            break;
        }
        for (int i = 0; i < n; ++i) {
            if (std::abs(x[i]) > divergence_bound || std::abs(x[i]) > plant.state_limits()[i]) {
                std::ostringstream msg;
                msg << "state x" << i + 1 << " left the admissible region at t = "
                    << static_cast<double>(k + 1) * scenario.step << " s (value " << x[i] << ")";
                traj.diverged = true;
                traj.diagnostic = msg.str();
                break;
            }
        }
        if (traj.diverged) break;
    }

    if (recorded < samples) {
        traj.time.conservativeResize(recorded);
        traj.states.conservativeResize(recorded, n);
        traj.control.conservativeResize(recorded);
        traj.reference.conservativeResize(recorded, q);
    }
    return traj;
}

SettlingReport settling_metrics(const Trajectory& traj, double band_x1, double band_x2) {
    SettlingReport rep;
    const Eigen::Index m = traj.size();
    if (m == 0) return rep;

    auto settle = [&](int col, double band) -> std::optional<double> {
        if (col >= traj.states.cols()) return std::nullopt;
        const double scale = traj.display.empty() ? 1.0 : traj.display[static_cast<std::size_t>(col)].scale;
        Eigen::Index last_out = -1;
        for (Eigen::Index i = 0; i < m; ++i) {
            const double dev = (traj.states(i, col) - traj.reference(i, col)) * scale;
            if (std::abs(dev) > band) last_out = i;
        }
        if (last_out == m - 1) return std::nullopt;
        return last_out < 0 ? traj.time[0] : traj.time[last_out + 1];
    };
    rep.x1_settling = settle(0, band_x1);
    rep.x2_settling = settle(1, band_x2);
    rep.max_abs_u = traj.control.cwiseAbs().maxCoeff();
    if (traj.saturation) {
        Eigen::Index on_limit = 0;
        for (Eigen::Index i = 0; i < m; ++i) {
            const double u = traj.control[i];
            if (u <= traj.saturation->lower || u >= traj.saturation->upper) ++on_limit;
        }
        rep.saturation_fraction = static_cast<double>(on_limit) / static_cast<double>(m);
    }
    return rep;
}

double quadratic_cost(const Trajectory& traj, const LqrWeights& weights) {
    const Eigen::Index m = traj.size();
    require(weights.q_diag.size() == traj.states.cols(), "weights do not match the trajectory");
    double total = 0.0;
    double prev = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
        const VectorXd x = traj.states.row(i).transpose();
        const double integrand =
            x.cwiseProduct(x).dot(weights.q_diag) + weights.r * traj.control[i] * traj.control[i];
        if (i > 0) total += 0.5 * (traj.time[i] - traj.time[i - 1]) * (integrand + prev);
        prev = integrand;
    }
    return total;
}

std::string csv_header(const Trajectory& traj) {
    std::string header = "t";
    const auto n = static_cast<std::size_t>(traj.states.cols());
    for (std::size_t i = 0; i < n; ++i) {
        header += ',';
        header += i < traj.display.size() ? traj.display[i].label : "x" + std::to_string(i + 1);
    }
    header += ",u_V";
    for (std::size_t j = 0; j < static_cast<std::size_t>(traj.reference.cols()); ++j) {
        header += ",cref" + std::to_string(j + 1);
        if (j < traj.display.size()) {
            const auto& label = traj.display[j].label;
            const auto pos = label.find('_');
            if (pos != std::string::npos) header += label.substr(pos);
        }
    }
    return header;
}

void write_csv(const Trajectory& traj, std::ostream& out) {
    out << csv_header(traj) << '\n';
    const Eigen::Index n = traj.states.cols();
    const Eigen::Index q = traj.reference.cols();
    auto scale = [&](Eigen::Index i) {
        return static_cast<std::size_t>(i) < traj.display.size() ? traj.display[static_cast<std::size_t>(i)].scale
                                                                 : 1.0;
    };
    for (Eigen::Index r = 0; r < traj.size(); ++r) {
        out << format_double(traj.time[r]);
        for (Eigen::Index i = 0; i < n; ++i) out << ',' << format_double(traj.states(r, i) * scale(i));
        out << ',' << format_double(traj.control[r]);
        for (Eigen::Index j = 0; j < q; ++j) out << ',' << format_double(traj.reference(r, j) * scale(j));
        out << '\n';
    }
}

}  // namespace simo
