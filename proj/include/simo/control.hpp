#pragma once

#include <utility>

#include "simo/lqr.hpp"

namespace simo {

struct Saturation {
    double lower = -12.0;  // V
    double upper = 12.0;   // V

    void validate() const;
};

double saturate(double u, const Saturation& sat);

// State feedback plus feedforward: u = -K x + K_ref c_ref.
double control_sfr_ffr(const VectorXd& x, const VectorXd& c_ref, const GainSet& gains);

// Bank of q PD controllers summed into one signal: u = sum_j K_p_j e_j + K_d_j edot_j.
double control_pd_continuous(const VectorXd& e, const VectorXd& e_dot, const GainSet& gains);

// Sampled PD with a first-order low-pass on the derivative term,
// discretized by backward Euler:
//   r_j = (e_k,j - e_{k-1},j) / T_s
//   d_k,j = (1 - beta) d_{k-1},j + beta r_j,   beta = N T_s / (1 + N T_s)
//   u = clamp(sum_j K_p_j e_k,j + K_d_j d_k,j)
struct DiscretePdState {
    GainSet gains;
    double sample_time = 0.1;  // T_s, seconds
    double filter_n = 10.0;    // N, rad/s
    Saturation saturation;
    VectorXd filtered_derivative;  // d_{k-1}
    VectorXd previous_error;       // e_{k-1}

    static DiscretePdState make(GainSet gains, double sample_time, double filter_n = 10.0,
                                Saturation saturation = {});

    [[nodiscard]] double beta() const noexcept;
    void reset();
};

struct DiscretePdOutput {
    double u = 0.0;      // saturated
    double u_raw = 0.0;  // before saturation
};

// Pure transition: returns the applied control and the successor state.
std::pair<DiscretePdOutput, DiscretePdState> step_discrete_pd(const DiscretePdState& state,
                                                              const VectorXd& e_k);

}  // namespace simo
