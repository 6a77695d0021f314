#include "simo/control.hpp"

#include <algorithm>
#include <cmath>

#include "simo/error.hpp"

namespace simo {

void Saturation::validate() const {
    if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower < upper))
        fail(ErrorKind::configuration, "saturation needs finite limits with lower < upper");
}

double saturate(double u, const Saturation& sat) {
    return std::min(std::max(u, sat.lower), sat.upper);
}

double control_sfr_ffr(const VectorXd& x, const VectorXd& c_ref, const GainSet& gains) {
    require(x.size() == gains.K.size(), "state and K have different lengths");
    require(c_ref.size() == gains.K_ref.size(), "reference and K_ref have different lengths");
    return -gains.K.dot(x) + gains.K_ref.dot(c_ref);
}

double control_pd_continuous(const VectorXd& e, const VectorXd& e_dot, const GainSet& gains) {
    require(e.size() == gains.K_p.size() && e_dot.size() == gains.K_d.size(),
            "error vectors must have length q");
    double u = 0.0;
    for (Eigen::Index j = 0; j < e.size(); ++j) u += gains.K_p[j] * e[j] + gains.K_d[j] * e_dot[j];
    return u;
}

DiscretePdState DiscretePdState::make(GainSet gains, double sample_time, double filter_n,
                                      Saturation saturation) {
    if (!(sample_time > 0.0) || !std::isfinite(sample_time))
        fail(ErrorKind::configuration, "sample time must be positive");
    if (!(filter_n > 0.0) || !std::isfinite(filter_n))
        fail(ErrorKind::configuration, "filter coefficient N must be positive");
    saturation.validate();
    DiscretePdState s;
    const int q = gains.output_dim();
    s.gains = std::move(gains);
    s.sample_time = sample_time;
    s.filter_n = filter_n;
    s.saturation = saturation;
    s.filtered_derivative = VectorXd::Zero(q);
    s.previous_error = VectorXd::Zero(q);
    return s;
}

double DiscretePdState::beta() const noexcept {
    const double nt = filter_n * sample_time;
    return nt / (1.0 + nt);
}

void DiscretePdState::reset() {
    filtered_derivative.setZero();
    previous_error.setZero();
}

std::pair<DiscretePdOutput, DiscretePdState> step_discrete_pd(const DiscretePdState& state,
                                                              const VectorXd& e_k) {
    if (!(state.sample_time > 0.0)) fail(ErrorKind::configuration, "sample time must be positive");
    if (!(state.filter_n > 0.0)) fail(ErrorKind::configuration, "filter coefficient N must be positive");
    require(e_k.size() == state.gains.output_dim(), "error sample must have length q");
    if (!e_k.allFinite()) fail(ErrorKind::numerical_domain, "error sample is not finite");

    DiscretePdState next = state;
    const double beta = state.beta();
    const VectorXd raw = (e_k - state.previous_error) / state.sample_time;
    next.filtered_derivative = (1.0 - beta) * state.filtered_derivative + beta * raw;
    next.previous_error = e_k;

    DiscretePdOutput out;
    out.u_raw = control_pd_continuous(e_k, next.filtered_derivative, state.gains);
    out.u = saturate(out.u_raw, state.saturation);
    return {out, std::move(next)};
}

}  // namespace simo
