#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "simo/error.hpp"
#include "simo/model.hpp"
#include "simo/robot.hpp"
#include "test_systems.hpp"

using namespace simo;

namespace {

MatrixXd sample_matrix() {
    MatrixXd A(4, 4);
    A << 0, 0, 1, 0, 0, 0, 0, 1, 2.5, -1, 0.3, 4, -0.7, 0.2, 1.1, -3;
    return A;
}

}  // namespace

TEST(EvaluateDynamics, LinearSystemIsAffineIdentity) {
    const MatrixXd A = sample_matrix();
    const VectorXd B = (VectorXd(4) << 0, 0, 1.5, -2).finished();
    const auto sys = make_linear_system(A, B, 2);
    const VectorXd x = (VectorXd(4) << 0.3, -1.2, 2.0, 0.7).finished();
    const VectorXd got = evaluate_dynamics(sys, x, -0.4);
    EXPECT_TRUE(got.isApprox(A * x + B * -0.4, 1e-15));
}

TEST(EvaluateDynamics, RobotEquilibriumIsZero) {
    const auto sys = robot::make_robot_system();
    EXPECT_TRUE(evaluate_dynamics(sys, VectorXd::Zero(4), 0.0).isZero(0.0));
}

TEST(EvaluateDynamics, RobotTenDegreeTilt) {
    // Direct solve of the coupled 2x2 mass system at 30 digits.
    const auto sys = robot::make_robot_system();
    const VectorXd x = (VectorXd(4) << 10.0, 0.0, 0.0, 0.0).finished();
    const VectorXd got = evaluate_dynamics(sys, x, 0.0);
    EXPECT_EQ(got[0], 0.0);
    EXPECT_EQ(got[1], 0.0);
    EXPECT_NEAR(got[2], 13.860797700728268, 1e-12);
    EXPECT_NEAR(got[3], -1.0851568887068045, 1e-12);
}

TEST(EvaluateDynamics, DimensionMismatchIsContractError) {
    const auto sys = robot::make_robot_system();
    try {
        (void)evaluate_dynamics(sys, VectorXd::Zero(3), 0.0);
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::contract);
    }
}

TEST(EvaluateDynamics, NonFiniteRowIsReported) {
    AffineSystem sys(
        "blowup", 1,
        [](const VectorXd& x) -> VectorXd { return (VectorXd(2) << x[1], 1.0 / x[0]).finished(); },
        [](const VectorXd&) -> VectorXd { return VectorXd::Zero(2); });
    try {
        (void)evaluate_dynamics(sys, VectorXd::Zero(2), 0.0);
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::numerical_domain);
        EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos) << e.what();
    }
}

TEST(EvaluateDynamics, IntegratorRowsCopyVelocities) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    const auto robot = robot::make_robot_system();
    for (int trial = 0; trial < 200; ++trial) {
        VectorXd x(4);
        for (int i = 0; i < 4; ++i) x[i] = U(rng);
        x[0] *= 10.0;
        const double u = U(rng) * 4.0;
        const VectorXd xdot = evaluate_dynamics(robot, x, u);
        EXPECT_EQ(xdot[0], x[2]);
        EXPECT_EQ(xdot[1], x[3]);
    }
    for (int q = 1; q <= 3; ++q) {
        const auto sys = test_systems::random_mechanical_system(rng, q);
        VectorXd x(2 * q);
        for (int i = 0; i < 2 * q; ++i) x[i] = U(rng);
        const VectorXd xdot = evaluate_dynamics(sys, x, U(rng));
        EXPECT_EQ(xdot.head(q), x.tail(q));
    }
}

TEST(EvaluateDynamics, IsPure) {
    const auto sys = robot::make_robot_system();
    const VectorXd x = (VectorXd(4) << 3.0, 0.2, -40.0, 0.5).finished();
    const VectorXd a = evaluate_dynamics(sys, x, 2.0);
    const VectorXd b = evaluate_dynamics(sys, x, 2.0);
    EXPECT_EQ(a, b);
}

TEST(NumericJacobian, ExactForLinearFields) {
    const MatrixXd A = sample_matrix();
    const auto sys = make_linear_system(A, (VectorXd(4) << 0, 0, 1, 1).finished(), 2);
    const VectorXd x = (VectorXd(4) << 100.0, -3.0, 0.5, 7.0).finished();
    EXPECT_LT((numeric_jacobian(sys, x) - A).cwiseAbs().maxCoeff(), 1e-7);
}

TEST(NumericJacobian, SineOscillatorAtOrigin) {
    AffineSystem sys(
        "pendulum", 1,
        [](const VectorXd& x) -> VectorXd { return (VectorXd(2) << x[1], std::sin(x[0])).finished(); },
        [](const VectorXd&) -> VectorXd { return (VectorXd(2) << 0, 1).finished(); });
    const MatrixXd J = numeric_jacobian(sys, VectorXd::Zero(2));
    EXPECT_NEAR(J(0, 0), 0.0, 1e-10);
    EXPECT_NEAR(J(0, 1), 1.0, 1e-10);
    EXPECT_NEAR(J(1, 0), 1.0, 1e-10);
    EXPECT_NEAR(J(1, 1), 0.0, 1e-10);
}

TEST(NumericJacobian, NonFiniteProbeIsDomainError) {
    AffineSystem sys(
        "log", 1,
        [](const VectorXd& x) -> VectorXd { return (VectorXd(2) << x[1], std::log(x[0])).finished(); },
        [](const VectorXd&) -> VectorXd { return VectorXd::Zero(2); });
    try {
        (void)numeric_jacobian(sys, VectorXd::Zero(2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::numerical_domain);
    }
}

TEST(NumericJacobian, AgreesWithAnalyticOnRandomSystems) {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int q = 1; q <= 3; ++q) {
        const auto sys = test_systems::random_mechanical_system(rng, q);
        for (int trial = 0; trial < 20; ++trial) {
            VectorXd x(2 * q);
            for (int i = 0; i < 2 * q; ++i) x[i] = U(rng);
            const MatrixXd Ja = sys.analytic_jacobian(x);
            const MatrixXd Jn = numeric_jacobian(sys, x);
            EXPECT_LT((Ja - Jn).cwiseAbs().maxCoeff(), 1e-7 * std::max(1.0, Ja.cwiseAbs().maxCoeff()));
        }
    }
}

TEST(AffineSystem, OutputMatrixSelectsPositions) {
    std::mt19937 rng(3);
    const auto sys = test_systems::random_mechanical_system(rng, 3);
    const MatrixXd E = sys.output_matrix();
    ASSERT_EQ(E.rows(), 3);
    ASSERT_EQ(E.cols(), 6);
    for (int i = 0; i < 3; ++i) {
        EXPECT_EQ(E.row(i).sum(), 1.0);
        EXPECT_EQ(E(i, i), 1.0);
    }
    EXPECT_TRUE(E.rightCols(3).isZero(0.0));
}

TEST(MakeLinearSystem, RejectsNonMechanicalStructure) {
    MatrixXd A = MatrixXd::Zero(2, 2);
    VectorXd B = (VectorXd(2) << 1, 0).finished();
    EXPECT_THROW((void)make_linear_system(A, B, 1, true), Error);
    EXPECT_NO_THROW((void)make_linear_system(A, B, 1, false));
}
