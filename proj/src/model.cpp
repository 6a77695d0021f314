#include "simo/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "simo/error.hpp"

namespace simo {

AffineSystem::AffineSystem(std::string name, int q, Field drift, Field input_field,
                           Jacobian jacobian, bool mechanical)
    : name_(std::move(name)),
      q_(q),
      drift_(std::move(drift)),
      input_(std::move(input_field)),
      jacobian_(std::move(jacobian)),
      mechanical_(mechanical) {
    if (q_ < 1) fail(ErrorKind::configuration, "output count q must be positive");
    if (!drift_ || !input_) fail(ErrorKind::configuration, "drift and input fields are required");
    display_.reserve(static_cast<std::size_t>(2 * q_));
    for (int i = 0; i < 2 * q_; ++i) display_.push_back({"x" + std::to_string(i + 1), 1.0});
    limits_ = VectorXd::Constant(2 * q_, std::numeric_limits<double>::infinity());
}

MatrixXd AffineSystem::output_matrix() const {
    MatrixXd E = MatrixXd::Zero(q_, 2 * q_);
    E.leftCols(q_).setIdentity();
    return E;
}

void AffineSystem::set_display(std::vector<StateDisplay> display) {
    require(static_cast<int>(display.size()) == state_dim(), "display metadata must cover every state");
    for (const auto& d : display) {
        if (!(d.scale > 0.0) || !std::isfinite(d.scale))
            fail(ErrorKind::configuration, "display scale must be positive and finite");
    }
    display_ = std::move(display);
}

void AffineSystem::set_state_limits(VectorXd limits) {
    require(limits.size() == state_dim(), "state limits must cover every state");
    for (Eigen::Index i = 0; i < limits.size(); ++i) {
        if (!(limits[i] > 0.0)) fail(ErrorKind::configuration, "state limits must be positive");
    }
    limits_ = std::move(limits);
}

namespace {

void check_state(const AffineSystem& sys, const VectorXd& x) {
    if (x.size() != sys.state_dim()) {
        fail(ErrorKind::contract, "state has length " + std::to_string(x.size()) +
                                      ", system expects " + std::to_string(sys.state_dim()));
    }
}

void check_finite(const VectorXd& v, const char* what) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i])) {
            fail(ErrorKind::numerical_domain,
                 std::string(what) + " is not finite in row " + std::to_string(i + 1));
        }
    }
}

}  // namespace

VectorXd evaluate_dynamics(const AffineSystem& sys, const VectorXd& x, double u) {
    check_state(sys, x);
    require(std::isfinite(u), "control input must be finite");
    VectorXd f = sys.drift(x);
    VectorXd g = sys.input_field(x);
    require(f.size() == sys.state_dim() && g.size() == sys.state_dim(),
            "vector field returned the wrong dimension");
    VectorXd xdot = f + g * u;
    check_finite(xdot, "state derivative");
    return xdot;
}

MatrixXd numeric_jacobian(const AffineSystem& sys, const VectorXd& x) {
    check_state(sys, x);
    const int n = sys.state_dim();
    MatrixXd J(n, n);
    VectorXd probe = x;
    for (int i = 0; i < n; ++i) {
        const double h = 1e-6 * std::max(1.0, std::abs(x[i]));
        probe[i] = x[i] + h;
        VectorXd plus = sys.drift(probe);
        probe[i] = x[i] - h;
        VectorXd minus = sys.drift(probe);
        probe[i] = x[i];
        check_finite(plus, "drift at probe point");
        check_finite(minus, "drift at probe point");
        J.col(i) = (plus - minus) / (2.0 * h);
    }
    return J;
}

MatrixXd drift_jacobian(const AffineSystem& sys, const VectorXd& x) {
    if (!sys.has_jacobian()) return numeric_jacobian(sys, x);
    check_state(sys, x);
    MatrixXd J = sys.analytic_jacobian(x);
    require(J.rows() == sys.state_dim() && J.cols() == sys.state_dim(),
            "analytic Jacobian has the wrong shape");
    if (!J.allFinite()) fail(ErrorKind::numerical_domain, "analytic Jacobian is not finite");
    return J;
}

AffineSystem make_linear_system(const MatrixXd& A, const VectorXd& B, int q, bool mechanical,
                                std::string name) {
    const Eigen::Index n = 2 * static_cast<Eigen::Index>(q);
    if (q < 1 || A.rows() != n || A.cols() != n || B.size() != n) {
        fail(ErrorKind::configuration, "linear system needs A of size 2q x 2q and B of length 2q");
    }
    if (!A.allFinite() || !B.allFinite()) fail(ErrorKind::configuration, "A and B must be finite");
    if (mechanical) {
        MatrixXd N = MatrixXd::Zero(q, n);
        N.rightCols(q).setIdentity();
        if (A.topRows(q) != N || !B.head(q).isZero(0.0)) {
            fail(ErrorKind::configuration,
                 "mechanical linear system needs A = [0 I; A1] and B = [0; B1]");
        }
    }
    return AffineSystem(
        std::move(name), q, [A](const VectorXd& x) -> VectorXd { return A * x; },
        [B](const VectorXd&) -> VectorXd { return B; }, [A](const VectorXd&) -> MatrixXd { return A; },
        mechanical);
}

}  // namespace simo
