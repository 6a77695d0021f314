#pragma once

#include <optional>
#include <string>
#include <vector>

#include "simo/model.hpp"

namespace simo {

// xdot = A x + B u, c = E x, valid near the operating point (x_e, u_e = 0).
struct LinearModel {
    MatrixXd A;
    VectorXd B;
    MatrixXd E;
    VectorXd x_e;  // the point actually used (after any perturbation)
    double u_e = 0.0;
    bool epsilon_applied = false;
    VectorXd epsilon;  // zero vector when no perturbation was applied
    double drift_residual = 0.0;  // ||F||_inf at the requested point
    std::vector<std::string> warnings;

    [[nodiscard]] int state_dim() const noexcept { return static_cast<int>(A.rows()); }
    [[nodiscard]] int output_dim() const noexcept { return static_cast<int>(E.rows()); }
};

struct LinearizeOptions {
    // Perturbation used when ||x_e|| = 0. Defaults to 1e-4 * (1, ..., 1).
    std::optional<VectorXd> epsilon;
    double equilibrium_tolerance = 1e-6;
};

inline constexpr double default_epsilon = 1e-4;

// Optimization-based linearization that fits a linear field through the
// operating point itself rather than in shifted coordinates:
//   B = G(x_e)
//   a_i = grad F_i(x_e) + (F_i(x_e) - x_e' grad F_i(x_e)) / (x_e' x_e) * x_e
// For mechanical systems the first q rows of A are emitted as [0 | I] and the
// first q entries of B as 0.
LinearModel linearize(const AffineSystem& sys, const VectorXd& x_e,
                      const LinearizeOptions& options = {});

struct ControllabilityReport {
    MatrixXd Mc;  // [B, AB, ..., A^{n-1} B]
    int rank = 0;
    double determinant = 0.0;
    VectorXd singular_values;
    bool controllable = false;
};

ControllabilityReport controllability(const MatrixXd& A, const VectorXd& B);
ControllabilityReport controllability(const LinearModel& model);

}  // namespace simo
