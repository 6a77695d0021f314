#pragma once

#include <cmath>
#include <random>
#include <string>

#include "simo/model.hpp"

namespace simo::test_systems {

// Random nonlinear mechanical system with q outputs:
//   xdot_j     = x_{q+j}
//   xdot_{q+j} = a_j . x + c_j sin(x_j) + d_j x_{q+j}^2 cos(x_1) + e_j
//   G_{q+j}    = b_j (1 + 0.1 cos(x_j))
// e_j is chosen so that x_e (all zeros) is an equilibrium unless shifted.
inline AffineSystem random_mechanical_system(std::mt19937& rng, int q, bool with_jacobian = true) {
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    const int n = 2 * q;
    MatrixXd a(q, n);
    VectorXd c(q), d(q), b(q);
    for (int j = 0; j < q; ++j) {
        for (int i = 0; i < n; ++i) a(j, i) = coef(rng);
        c[j] = coef(rng);
        d[j] = coef(rng);
        b[j] = coef(rng) + (coef(rng) > 0 ? 3.0 : -3.0);
    }
    auto drift = [=](const VectorXd& x) -> VectorXd {
        VectorXd f(n);
        for (int j = 0; j < q; ++j) {
            f[j] = x[q + j];
            f[q + j] = a.row(j).dot(x) + c[j] * std::sin(x[j]) + d[j] * x[q + j] * x[q + j] * std::cos(x[0]);
        }
        return f;
    };
    auto input = [=](const VectorXd& x) -> VectorXd {
        VectorXd g = VectorXd::Zero(n);
        for (int j = 0; j < q; ++j) g[q + j] = b[j] * (1.0 + 0.1 * std::cos(x[j]));
        return g;
    };
    AffineSystem::Jacobian jac;
    if (with_jacobian) {
        jac = [=](const VectorXd& x) -> MatrixXd {
            MatrixXd J = MatrixXd::Zero(n, n);
            for (int j = 0; j < q; ++j) {
                J(j, q + j) = 1.0;
                J.row(q + j) = a.row(j);
                J(q + j, j) += c[j] * std::cos(x[j]);
                J(q + j, q + j) += 2.0 * d[j] * x[q + j] * std::cos(x[0]);
                J(q + j, 0) += -d[j] * x[q + j] * x[q + j] * std::sin(x[0]);
            }
            return J;
        };
    }
    return AffineSystem("random-mechanical-q" + std::to_string(q), q, drift, input, jac, true);
}

inline double max_rel_error(const MatrixXd& got, const MatrixXd& want, double floor = 1e-12) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < got.rows(); ++i)
        for (Eigen::Index j = 0; j < got.cols(); ++j)
            worst = std::max(worst, std::abs(got(i, j) - want(i, j)) / std::max(std::abs(want(i, j)), floor));
    return worst;
}

}  // namespace simo::test_systems
