#pragma once

#include <complex>
#include <vector>

#include "simo/model.hpp"

namespace simo {

struct LqrWeights {
    VectorXd q_diag;  // diagonal of Q, aligned with the state ordering
    double r = 1.0;

    // diag(100, ..., 100, 1, ..., 1) with 100 on the q position-like states;
    // for the balancing robot this is diag(100, 100, 1, 1), R = 1.
    static LqrWeights defaults(int n);

    [[nodiscard]] MatrixXd Q() const { return q_diag.asDiagonal(); }
    void validate(int n) const;
};

// u = -K x + K_ref c_ref, and equivalently the PD bank u = K_p e + K_d edot
// with K = [K_p | K_d] and K_ref = K_p.
struct GainSet {
    RowVectorXd K;
    RowVectorXd K_ref;
    RowVectorXd K_p;
    RowVectorXd K_d;

    static GainSet from_state_feedback(const RowVectorXd& K, int q);
    [[nodiscard]] RowVectorXd merged() const;
    [[nodiscard]] int output_dim() const noexcept { return static_cast<int>(K_p.size()); }
};

enum class CareMethod { automatic, schur, newton_kleinman };

struct CareSolution {
    MatrixXd P;
    double residual = 0.0;  // ||A'P + PA - PBR^-1B'P + Q||_F / max(1, ||P||_F)
    CareMethod method = CareMethod::schur;
    int newton_iterations = 0;
};

inline constexpr double care_residual_target = 1e-10;
inline constexpr int newton_kleinman_max_iterations = 200;

double care_residual(const MatrixXd& A, const VectorXd& B, const MatrixXd& Q, double r,
                     const MatrixXd& P);

// PBH test on the eigenvalues of A with nonnegative real part.
bool is_stabilizable(const MatrixXd& A, const VectorXd& B);

// Stabilizing solution of A'P + PA - P B R^-1 B' P + Q = 0.
//
// automatic: ordered complex Schur decomposition of the Hamiltonian, polished
// with Newton-Kleinman steps when the residual misses the target; falls back
// to pure Newton-Kleinman (started from a shift-continuation gain) when the
// Schur route fails. Throws ErrorKind::design for a non-stabilizable pair and
// ErrorKind::numerical when no solution reaches the residual target.
CareSolution solve_care(const MatrixXd& A, const VectorXd& B, const LqrWeights& weights,
                        CareMethod method = CareMethod::automatic);

struct LqrDesign {
    GainSet gains;
    CareSolution care;
    std::vector<std::complex<double>> closed_loop_eigenvalues;  // eig(A - B K)
};

LqrDesign design_lqr(const MatrixXd& A, const VectorXd& B, int q, const LqrWeights& weights,
                     CareMethod method = CareMethod::automatic);

GainSet lqr_gain(const MatrixXd& A, const VectorXd& B, int q, const LqrWeights& weights);

// Solves A' X + X A + C = 0 (Kronecker form; meant for the small n here).
MatrixXd solve_lyapunov(const MatrixXd& A, const MatrixXd& C);

std::vector<std::complex<double>> eigenvalues(const MatrixXd& M);

}  // namespace simo
