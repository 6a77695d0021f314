#include "simo/lqr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "simo/error.hpp"

namespace simo {

using Eigen::Index;
using Eigen::MatrixXcd;
using cplx = std::complex<double>;

LqrWeights LqrWeights::defaults(int n) {
    require(n > 0 && n % 2 == 0, "default weights need an even state dimension");
    LqrWeights w;
    w.q_diag = VectorXd::Ones(n);
    w.q_diag.head(n / 2).setConstant(100.0);
    w.r = 1.0;
    return w;
}

void LqrWeights::validate(int n) const {
    if (q_diag.size() != n)
        fail(ErrorKind::configuration, "Q diagonal has length " + std::to_string(q_diag.size()) +
                                           ", expected " + std::to_string(n));
    for (Index i = 0; i < q_diag.size(); ++i) {
        if (!std::isfinite(q_diag[i]) || q_diag[i] < 0.0)
            fail(ErrorKind::configuration, "Q diagonal entries must be finite and nonnegative");
    }
    if (!std::isfinite(r) || !(r > 0.0)) fail(ErrorKind::configuration, "R must be positive");
}

GainSet GainSet::from_state_feedback(const RowVectorXd& K, int q) {
    require(q > 0 && K.size() == 2 * q, "state feedback gain must have length 2q");
    GainSet g;
    g.K = K;
    g.K_p = K.head(q);
    g.K_d = K.tail(q);
    g.K_ref = g.K_p;
    return g;
}

RowVectorXd GainSet::merged() const {
    RowVectorXd out(K_p.size() + K_d.size());
    out << K_p, K_d;
    return out;
}

double care_residual(const MatrixXd& A, const VectorXd& B, const MatrixXd& Q, double r,
                     const MatrixXd& P) {
    const VectorXd PB = P * B;
    const MatrixXd res = A.transpose() * P + P * A - (PB * PB.transpose()) / r + Q;
    return res.norm() / std::max(1.0, P.norm());
}

std::vector<cplx> eigenvalues(const MatrixXd& M) {
    Eigen::EigenSolver<MatrixXd> es(M, false);
    if (es.info() != Eigen::Success) fail(ErrorKind::numerical, "eigenvalue computation failed");
    const auto& ev = es.eigenvalues();
    std::vector<cplx> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return out;
}

bool is_stabilizable(const MatrixXd& A, const VectorXd& B) {
    const Index n = A.rows();
    require(A.cols() == n && B.size() == n, "stabilizability needs square A and matching B");
    const double scale = std::max(1.0, A.norm());
    for (const cplx lambda : eigenvalues(A)) {
        if (lambda.real() < -1e-12 * scale) continue;
        MatrixXcd pbh(n, n + 1);
        pbh.leftCols(n) = A.cast<cplx>() - lambda * MatrixXcd::Identity(n, n);
        pbh.col(n) = B.cast<cplx>();
        Eigen::JacobiSVD<MatrixXcd> svd(pbh);
        const auto& s = svd.singularValues();
        const double tol = std::max(s[0], scale) * static_cast<double>(n + 1) *
                           std::numeric_limits<double>::epsilon() * 1e3;
        if (s[n - 1] <= tol) return false;
    }
    return true;
}

MatrixXd solve_lyapunov(const MatrixXd& A, const MatrixXd& C) {
    const Index n = A.rows();
    require(A.cols() == n && C.rows() == n && C.cols() == n, "Lyapunov operands must be n x n");
    // vec(A'X + XA) = (I kron A' + A' kron I) vec(X), column-major vec.
    const MatrixXd At = A.transpose();
    MatrixXd L = MatrixXd::Zero(n * n, n * n);
    for (Index j = 0; j < n; ++j) {
        L.block(j * n, j * n, n, n) += At;
        for (Index i = 0; i < n; ++i) {
            L.block(j * n, i * n, n, n).diagonal().array() += At(j, i);
        }
    }
    const VectorXd rhs = -Eigen::Map<const VectorXd>(C.data(), n * n);
    Eigen::FullPivLU<MatrixXd> lu(L);
    if (!lu.isInvertible()) fail(ErrorKind::numerical, "Lyapunov operator is singular");
    const VectorXd x = lu.solve(rhs);
    MatrixXd X = Eigen::Map<const MatrixXd>(x.data(), n, n);
    return 0.5 * (X + X.transpose());
}

namespace {

// Swap the adjacent diagonal entries k, k+1 of the upper-triangular T, keeping
// H = Z T Z^H.
void swap_schur_pair(MatrixXcd& T, MatrixXcd& Z, Index k) {
    const cplx a = T(k, k);
    const cplx b = T(k + 1, k + 1);
    Eigen::JacobiRotation<cplx> G;
    G.makeGivens(T(k, k + 1), b - a);
    T.applyOnTheLeft(k, k + 1, G.adjoint());
    T.applyOnTheRight(k, k + 1, G);
    Z.applyOnTheRight(k, k + 1, G);
    T(k + 1, k) = 0.0;
    T(k, k) = b;
    T(k + 1, k + 1) = a;
}

struct SchurAttempt {
    bool ok = false;
    MatrixXd P;
    std::string reason;
};

SchurAttempt care_schur(const MatrixXd& A, const VectorXd& B, const MatrixXd& Q, double r) {
    const Index n = A.rows();
    MatrixXd H(2 * n, 2 * n);
    H << A, -(B * B.transpose()) / r, -Q, -A.transpose();

    Eigen::ComplexSchur<MatrixXcd> schur(H.cast<cplx>());
    if (schur.info() != Eigen::Success) return {false, {}, "complex Schur decomposition did not converge"};
    MatrixXcd T = schur.matrixT();
    MatrixXcd Z = schur.matrixU();

    Index stable = 0;
    for (Index i = 0; i < 2 * n; ++i) {
        if (T(i, i).real() < 0.0) ++stable;
    }
    if (stable != n) {
        return {false, {}, "Hamiltonian has " + std::to_string(stable) + " stable eigenvalues, expected " +
                               std::to_string(n)};
    }
    for (Index pass = 0; pass < 2 * n; ++pass) {
        bool swapped = false;
        for (Index k = 0; k + 1 < 2 * n; ++k) {
            if (T(k, k).real() >= 0.0 && T(k + 1, k + 1).real() < 0.0) {
                swap_schur_pair(T, Z, k);
                swapped = true;
            }
        }
        if (!swapped) break;
    }

    const MatrixXcd U11 = Z.topLeftCorner(n, n);
    const MatrixXcd U21 = Z.bottomLeftCorner(n, n);
    Eigen::FullPivLU<MatrixXcd> lu(U11.transpose());
    if (!lu.isInvertible() || lu.rcond() < 1e-14)
        return {false, {}, "stable invariant subspace is not a graph (U11 singular)"};
    const MatrixXcd Pc = lu.solve(U21.transpose()).transpose();
    MatrixXd P = Pc.real();
    P = 0.5 * (P + P.transpose());
    if (!P.allFinite()) return {false, {}, "Schur solution is not finite"};
    return {true, P, {}};
}

bool is_hurwitz(const MatrixXd& M) {
    for (const cplx lambda : eigenvalues(M)) {
        if (!(lambda.real() < 0.0)) return false;
    }
    return true;
}

struct NewtonResult {
    MatrixXd P;
    double residual = std::numeric_limits<double>::infinity();
    int iterations = 0;
};

NewtonResult newton_kleinman(const MatrixXd& A, const VectorXd& B, const MatrixXd& Q, double r,
                             RowVectorXd K, int max_iterations) {
    NewtonResult best;
    for (int it = 1; it <= max_iterations; ++it) {
        const MatrixXd Ak = A - B * K;
        const MatrixXd rhs = Q + K.transpose() * r * K;
        MatrixXd P;
        try {
            P = solve_lyapunov(Ak, rhs);
        } catch (const Error&) {
            break;
        }
        const double res = care_residual(A, B, Q, r, P);
        if (res < best.residual) {
            best = {P, res, it};
        } else if (it > 3 && res > 0.5 * best.residual) {
            break;  // stagnated at roundoff level
        }
        if (res < care_residual_target) break;
        K = (B.transpose() * P) / r;
    }
    return best;
}

double spectral_abscissa(const MatrixXd& M) {
    double a = -std::numeric_limits<double>::infinity();
    for (const cplx lambda : eigenvalues(M)) a = std::max(a, lambda.real());
    return a;
}

// Stabilizing gain by shift continuation. For alpha above the spectral
// abscissa of A, A - alpha I is Hurwitz and K = 0 starts Newton-Kleinman on
// the shifted problem. Its closed loop keeps a margin m, so the same K still
// stabilizes A - alpha' I for alpha' > alpha - m; alpha is lowered that way
// until K stabilizes A itself.
RowVectorXd shifted_stabilizing_gain(const MatrixXd& A, const VectorXd& B, const MatrixXd& Q, double r) {
    const Index n = A.rows();
    const MatrixXd I = MatrixXd::Identity(n, n);
    RowVectorXd K = RowVectorXd::Zero(n);
    if (spectral_abscissa(A) < 0.0) return K;
    double alpha = spectral_abscissa(A) + 1.0;
    for (int round = 0; round < 200; ++round) {
        const MatrixXd shifted = A - alpha * I;
        const NewtonResult nk = newton_kleinman(shifted, B, Q, r, K, 50);
        if (!nk.P.size()) break;
        K = (B.transpose() * nk.P) / r;
        if (spectral_abscissa(A - B * K) < 0.0) return K;
        const double margin = -spectral_abscissa(shifted - B * K);
        if (!(margin > 0.0)) break;
        alpha = std::max(0.0, alpha - 0.9 * margin);
    }
    fail(ErrorKind::numerical, "could not find an initial stabilizing gain");
}

}  // namespace

CareSolution solve_care(const MatrixXd& A, const VectorXd& B, const LqrWeights& weights,
                        CareMethod method) {
    const Index n = A.rows();
    require(A.cols() == n && B.size() == n && n > 0, "CARE needs square A and matching B");
    weights.validate(static_cast<int>(n));
    if (!A.allFinite() || !B.allFinite()) fail(ErrorKind::configuration, "A and B must be finite");
    if (!is_stabilizable(A, B)) fail(ErrorKind::design, "the pair (A, B) is not stabilizable");

    const MatrixXd Q = weights.Q();
    const double r = weights.r;
    std::string schur_failure;

    if (method != CareMethod::newton_kleinman) {
        SchurAttempt attempt = care_schur(A, B, Q, r);
        if (attempt.ok) {
            CareSolution sol{attempt.P, care_residual(A, B, Q, r, attempt.P), CareMethod::schur, 0};
            const RowVectorXd K = (B.transpose() * sol.P) / r;
            if (sol.residual >= care_residual_target && is_hurwitz(A - B * K)) {
                NewtonResult polished = newton_kleinman(A, B, Q, r, K, newton_kleinman_max_iterations);
                if (polished.residual < sol.residual) {
                    sol.P = polished.P;
                    sol.residual = polished.residual;
                    sol.newton_iterations = polished.iterations;
                }
            }
            if (sol.residual < care_residual_target || method == CareMethod::schur) {
                if (method == CareMethod::schur && sol.residual >= care_residual_target) {
                    std::ostringstream msg;
                    msg << "Schur CARE solution missed the residual target (residual " << sol.residual << ")";
                    fail(ErrorKind::numerical, msg.str());
                }
                return sol;
            }
            schur_failure = "residual too large after polishing";
        } else {
            schur_failure = attempt.reason;
            if (method == CareMethod::schur) fail(ErrorKind::numerical, "Schur CARE solver: " + attempt.reason);
        }
    }

    const RowVectorXd K0 = shifted_stabilizing_gain(A, B, Q, r);
    NewtonResult nk = newton_kleinman(A, B, Q, r, K0, newton_kleinman_max_iterations);
    if (!(nk.residual < care_residual_target)) {
        std::ostringstream msg;
        msg << "Newton-Kleinman did not converge within " << newton_kleinman_max_iterations
            << " iterations (best residual " << nk.residual << ")";
        if (!schur_failure.empty()) msg << "; Schur route: " << schur_failure;
        fail(ErrorKind::numerical, msg.str());
    }
    return {nk.P, nk.residual, CareMethod::newton_kleinman, nk.iterations};
}

LqrDesign design_lqr(const MatrixXd& A, const VectorXd& B, int q, const LqrWeights& weights,
                     CareMethod method) {
    require(A.rows() == 2 * q, "state dimension must be 2q");
    LqrDesign d;
    d.care = solve_care(A, B, weights, method);
    const RowVectorXd K = (B.transpose() * d.care.P) / weights.r;
    d.gains = GainSet::from_state_feedback(K, q);
    d.closed_loop_eigenvalues = eigenvalues(A - B * K);
    for (const cplx lambda : d.closed_loop_eigenvalues) {
        if (!(lambda.real() < 0.0)) fail(ErrorKind::numerical, "LQR closed loop is not Hurwitz");
    }
    return d;
}

GainSet lqr_gain(const MatrixXd& A, const VectorXd& B, int q, const LqrWeights& weights) {
    return design_lqr(A, B, q, weights).gains;
}

}  // namespace simo
