#include "simo/linearize.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "simo/error.hpp"

namespace simo {

LinearModel linearize(const AffineSystem& sys, const VectorXd& x_e, const LinearizeOptions& options) {
    const int n = sys.state_dim();
    const int q = sys.output_dim();
    require(x_e.size() == n, "equilibrium has length " + std::to_string(x_e.size()) +
                                 ", system expects " + std::to_string(n));
    require(x_e.allFinite(), "equilibrium must be finite");

    LinearModel model;
    model.x_e = x_e;
    model.epsilon = VectorXd::Zero(n);

    // equilibrium check on the requested point, not the shifted one
    const VectorXd F_requested = sys.drift(x_e);
    if (!F_requested.allFinite()) fail(ErrorKind::numerical_domain, "drift is not finite at the requested point");
    model.drift_residual = F_requested.lpNorm<Eigen::Infinity>();
    if (model.drift_residual > options.equilibrium_tolerance) {
        std::ostringstream msg;
        msg << "operating point is not an equilibrium: ||F(x_e)||_inf = " << model.drift_residual;
        model.warnings.push_back(msg.str());
    }

    if (x_e.squaredNorm() == 0.0) {
        VectorXd eps = options.epsilon.value_or(VectorXd::Constant(n, default_epsilon));
        require(eps.size() == n, "epsilon must have the state dimension");
        model.x_e = x_e + eps;
        model.epsilon = eps;
        model.epsilon_applied = true;
        if (!(model.x_e.squaredNorm() > 0.0) || !std::isfinite(model.x_e.squaredNorm())) {
            fail(ErrorKind::configuration, "perturbed equilibrium still has zero norm; choose a nonzero epsilon");
        }
    }

    const VectorXd& xe = model.x_e;
    const VectorXd F = sys.drift(xe);
    const VectorXd G = sys.input_field(xe);
    if (!F.allFinite() || !G.allFinite())
        fail(ErrorKind::numerical_domain, "vector field is not finite at the operating point");
    const MatrixXd J = drift_jacobian(sys, xe);

    const double xx = xe.squaredNorm();
    model.A.resize(n, n);
    for (int i = 0; i < n; ++i) {
        const RowVectorXd grad = J.row(i);
        const double correction = (F[i] - grad.dot(xe)) / xx;
        model.A.row(i) = grad + correction * xe.transpose();
    }
    model.B = G;

    if (sys.mechanical()) {
        model.A.topRows(q).setZero();
        model.A.topRightCorner(q, q).setIdentity();
        model.B.head(q).setZero();
    }
    model.E = sys.output_matrix();
    return model;
}

ControllabilityReport controllability(const MatrixXd& A, const VectorXd& B) {
    const Eigen::Index n = A.rows();
    require(A.cols() == n && B.size() == n && n > 0, "controllability needs square A and matching B");

    ControllabilityReport report;
    report.Mc.resize(n, n);
    VectorXd column = B;
    for (Eigen::Index j = 0; j < n; ++j) {
        report.Mc.col(j) = column;
        column = A * column;
    }

    Eigen::JacobiSVD<MatrixXd> svd(report.Mc);
    report.singular_values = svd.singularValues();
    const double sigma_max = report.singular_values.size() ? report.singular_values[0] : 0.0;
    const double threshold =
        sigma_max * static_cast<double>(n) * std::numeric_limits<double>::epsilon();
    report.rank = 0;
    for (Eigen::Index i = 0; i < report.singular_values.size(); ++i) {
        if (report.singular_values[i] > threshold) ++report.rank;
    }
    report.determinant = report.Mc.determinant();
    report.controllable = report.rank == n;
    return report;
}

ControllabilityReport controllability(const LinearModel& model) {
    return controllability(model.A, model.B);
}

}  // namespace simo
