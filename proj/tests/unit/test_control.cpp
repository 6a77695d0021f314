#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "simo/control.hpp"
#include "simo/error.hpp"

using namespace simo;

namespace {

GainSet published_gains() {
    RowVectorXd K(4);
    K << -13.1881, -10.0, -9.3717, -45.1452;
    return GainSet::from_state_feedback(K, 2);
}

}  // namespace

TEST(Saturate, ClampsAndIsIdempotent) {
    const Saturation sat;
    EXPECT_EQ(saturate(20.0, sat), 12.0);
    EXPECT_EQ(saturate(-20.0, sat), -12.0);
    EXPECT_EQ(saturate(3.5, sat), 3.5);
    std::mt19937 rng(47);
    std::uniform_real_distribution<double> U(-100.0, 100.0);
    for (int i = 0; i < 1000; ++i) {
        const double u = U(rng);
        EXPECT_EQ(saturate(saturate(u, sat), sat), saturate(u, sat));
    }
}

TEST(Saturation, Validation) {
    EXPECT_THROW((Saturation{1.0, -1.0}).validate(), Error);
    EXPECT_THROW((Saturation{0.0, 0.0}).validate(), Error);
    EXPECT_NO_THROW((Saturation{-5.0, 7.0}).validate());
}

TEST(ControlSfrFfr, DegreeStateExample) {
    // x in degrees: -K x = 13.1873 * 10.
    VectorXd x = VectorXd::Zero(4);
    x[0] = 10.0;
    EXPECT_NEAR(control_sfr_ffr(x, VectorXd::Zero(2), published_gains()), 131.881, 1e-9);
}

TEST(ControlSfrFfr, RadianStateExample) {
    VectorXd x = VectorXd::Zero(4);
    x[0] = 0.17453;
    EXPECT_NEAR(control_sfr_ffr(x, VectorXd::Zero(2), published_gains()), 2.3018, 2e-4);
}

TEST(ControlSfrFfr, ReferenceFeedForward) {
    VectorXd x = VectorXd::Zero(4);
    VectorXd c = (VectorXd(2) << 0.0, 0.5).finished();
    EXPECT_NEAR(control_sfr_ffr(x, c, published_gains()), -5.0, 1e-12);
}

TEST(ControlSfrFfr, MatchesPdWhenVelocityReferenceIsZero) {
    std::mt19937 rng(53);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const auto g = published_gains();
    for (int i = 0; i < 100; ++i) {
        VectorXd x(4), c(2);
        for (int j = 0; j < 4; ++j) x[j] = U(rng);
        for (int j = 0; j < 2; ++j) c[j] = U(rng);
        const VectorXd e = c - x.head(2);
        const VectorXd edot = -x.tail(2);
        EXPECT_NEAR(control_sfr_ffr(x, c, g), control_pd_continuous(e, edot, g), 1e-12);
    }
}

TEST(ControlSfrFfr, DimensionMismatch) {
    EXPECT_THROW((void)control_sfr_ffr(VectorXd::Zero(3), VectorXd::Zero(2), published_gains()), Error);
    EXPECT_THROW((void)control_sfr_ffr(VectorXd::Zero(4), VectorXd::Zero(3), published_gains()), Error);
}

TEST(DiscretePd, Beta) {
    const auto s = DiscretePdState::make(published_gains(), 0.1, 10.0);
    EXPECT_DOUBLE_EQ(s.beta(), 0.5);
}

TEST(DiscretePd, RejectsBadTiming) {
    EXPECT_THROW((void)DiscretePdState::make(published_gains(), 0.0), Error);
    EXPECT_THROW((void)DiscretePdState::make(published_gains(), 0.1, -1.0), Error);
}

TEST(DiscretePd, FirstStepAndFilterDecay) {
    // Gains with only a derivative term on output 1 isolate the filter.
    GainSet g = GainSet::from_state_feedback((RowVectorXd(2) << 0.0, -1.0).finished(), 1);
    auto s = DiscretePdState::make(g, 0.1, 10.0, Saturation{-1e9, 1e9});
    const double beta = s.beta();
    auto [out, next] = step_discrete_pd(s, (VectorXd(1) << 1.0).finished());
    // d_0 = beta * (e_0 - 0) / Ts
    const double d0 = beta * 1.0 / 0.1;
    EXPECT_NEAR(out.u_raw, -1.0 * d0, 1e-12);
    double d = d0;
    for (int k = 1; k < 20; ++k) {
        auto r = step_discrete_pd(next, (VectorXd(1) << 1.0).finished());
        d *= (1.0 - beta);
        EXPECT_NEAR(r.first.u_raw, -d, 1e-12);
        next = r.second;
    }
}

TEST(DiscretePd, SaturatedOutput) {
    auto s = DiscretePdState::make(published_gains(), 0.1);
    const auto [out, next] = step_discrete_pd(s, (VectorXd(2) << -10.0, 0.0).finished());
    // tilt of +10 deg gives a positive command, plus the derivative kick of the first sample
    EXPECT_EQ(out.u, 12.0);
    EXPECT_NEAR(out.u_raw, 131.881 + 9.3717 * 50.0, 1e-9);
    EXPECT_EQ(next.previous_error[0], -10.0);
}

TEST(DiscretePd, PureAndResettable) {
    auto s = DiscretePdState::make(published_gains(), 0.1);
    const VectorXd e = (VectorXd(2) << 0.3, -0.1).finished();
    const auto a = step_discrete_pd(s, e);
    const auto b = step_discrete_pd(s, e);
    EXPECT_EQ(a.first.u_raw, b.first.u_raw);
    auto moved = a.second;
    moved.reset();
    EXPECT_TRUE(moved.filtered_derivative.isZero(0.0));
    EXPECT_TRUE(moved.previous_error.isZero(0.0));
    EXPECT_EQ(step_discrete_pd(moved, e).first.u_raw, a.first.u_raw);
}
