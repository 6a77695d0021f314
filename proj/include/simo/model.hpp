#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace simo {

using Eigen::MatrixXd;
using Eigen::RowVectorXd;
using Eigen::VectorXd;

// How a state coordinate is shown at the I/O boundary (CSV columns, config
// initial conditions). display = internal * scale.
struct StateDisplay {
    std::string label;
    double scale = 1.0;
};

// Nonlinear system affine in a scalar control, xdot = F(x) + G(x) u, with
// n = 2q states. For the mechanical class the first q rows are the pure
// integrators xdot_j = x_{q+j} and carry no control.
class AffineSystem {
public:
    using Field = std::function<VectorXd(const VectorXd&)>;
    using Jacobian = std::function<MatrixXd(const VectorXd&)>;

    AffineSystem(std::string name, int q, Field drift, Field input_field,
                 Jacobian jacobian = {}, bool mechanical = true);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] int state_dim() const noexcept { return 2 * q_; }
    [[nodiscard]] int output_dim() const noexcept { return q_; }
    [[nodiscard]] bool mechanical() const noexcept { return mechanical_; }
    [[nodiscard]] bool has_jacobian() const noexcept { return static_cast<bool>(jacobian_); }

    // Raw field access; no dimension or finiteness checks.
    [[nodiscard]] VectorXd drift(const VectorXd& x) const { return drift_(x); }
    [[nodiscard]] VectorXd input_field(const VectorXd& x) const { return input_(x); }
    // Analytic Jacobian of the drift; only valid when has_jacobian().
    [[nodiscard]] MatrixXd analytic_jacobian(const VectorXd& x) const { return jacobian_(x); }

    // E = [I_q | 0_q]
    [[nodiscard]] MatrixXd output_matrix() const;

    [[nodiscard]] const std::vector<StateDisplay>& display() const noexcept { return display_; }
    void set_display(std::vector<StateDisplay> display);

    // Per-coordinate |x_i| bounds a simulation treats as divergence; +inf by default.
    [[nodiscard]] const VectorXd& state_limits() const noexcept { return limits_; }
    void set_state_limits(VectorXd limits);

private:
    std::string name_;
    int q_;
    Field drift_;
    Field input_;
    Jacobian jacobian_;
    bool mechanical_;
    std::vector<StateDisplay> display_;
    VectorXd limits_;
};

// F(x) + G(x) u. Throws ErrorKind::contract on a size mismatch and
// ErrorKind::numerical_domain naming the first non-finite row.
VectorXd evaluate_dynamics(const AffineSystem& sys, const VectorXd& x, double u);

// Central differences with h_i = 1e-6 * max(1, |x_i|). Row i approximates grad F_i.
MatrixXd numeric_jacobian(const AffineSystem& sys, const VectorXd& x);

// Analytic Jacobian when the system supplies one, numeric otherwise.
MatrixXd drift_jacobian(const AffineSystem& sys, const VectorXd& x);

// F(x) = A x, G(x) = B. With mechanical = true the first q rows of A must be
// [0 | I] and the first q entries of B zero.
AffineSystem make_linear_system(const MatrixXd& A, const VectorXd& B, int q,
                                bool mechanical = true, std::string name = "linear");

}  // namespace simo
