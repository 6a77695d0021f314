#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "simo/simo_lqr.h"

namespace {

struct Robot {
    simo_system* sys = nullptr;
    simo_linear_model* model = nullptr;
    simo_gain_set* gains = nullptr;
    Robot() {
        simo_robot_params p;
        simo_robot_default_params(&p);
        EXPECT_EQ(simo_robot_create(&p, &sys), SIMO_OK);
        EXPECT_EQ(simo_linearize(sys, nullptr, nullptr, &model), SIMO_OK);
        EXPECT_EQ(simo_design(model, nullptr, 0, 0.0, &gains), SIMO_OK);
    }
    ~Robot() {
        simo_gain_set_free(gains);
        simo_linear_model_free(model);
        simo_system_free(sys);
    }
};

simo_scenario tilt_scenario(const double* x0, simo_controller kind, double duration) {
    simo_scenario s{};
    s.name = "tilt";
    s.controller = kind;
    s.initial_state = x0;
    s.initial_state_len = 4;
    s.duration = duration;
    s.step = 1e-3;
    s.sample_time = 0.1;
    s.filter_n = 10.0;
    s.saturate = -1;
    s.u_min = -12.0;
    s.u_max = 12.0;
    return s;
}

}  // namespace

TEST(CApi, StatusStringsAndVersion) {
    EXPECT_STREQ(simo_status_string(SIMO_OK), "ok");
    EXPECT_NE(std::string(simo_version()), "");
    EXPECT_NE(std::string(simo_status_string(SIMO_ERR_DESIGN)), "");
}

TEST(CApi, NullArgumentsAreContractErrors) {
    EXPECT_EQ(simo_robot_create(nullptr, nullptr), SIMO_ERR_CONTRACT);
    EXPECT_NE(std::string(simo_last_error_message()), "");
    EXPECT_EQ(simo_linearize(nullptr, nullptr, nullptr, nullptr), SIMO_ERR_CONTRACT);
    simo_system_free(nullptr);
    simo_trajectory_free(nullptr);
}

TEST(CApi, EvaluateRobot) {
    Robot r;
    const double x[4] = {0, 0, 0, 0};
    double f[4];
    ASSERT_EQ(simo_system_evaluate(r.sys, x, 1.0, f), SIMO_OK);
    EXPECT_NEAR(f[2], -628.85241971844731, 1e-9);
    EXPECT_NEAR(f[3], 124.53003419836292, 1e-10);
}

TEST(CApi, LinearizeAndDesign) {
    Robot r;
    size_t n = 0, q = 0;
    ASSERT_EQ(simo_linear_model_dims(r.model, &n, &q), SIMO_OK);
    EXPECT_EQ(n, 4u);
    EXPECT_EQ(q, 2u);
    std::vector<double> A(16);
    ASSERT_EQ(simo_linear_model_get(r.model, SIMO_MATRIX_A, A.data(), A.size()), SIMO_OK);
    EXPECT_EQ(A[0 * 4 + 2], 1.0);  // row-major
    EXPECT_NEAR(A[2 * 4 + 3], 3278.1273343726721, 1e-3);
    EXPECT_TRUE(simo_linear_model_epsilon_applied(r.model));

    double K[4];
    ASSERT_EQ(simo_gain_set_get(r.gains, SIMO_GAIN_K, K, 4), SIMO_OK);
    EXPECT_NEAR(K[0], -13.1873, 0.01);
    EXPECT_NEAR(K[3], -45.1374, 0.03);
    double Kp[2];
    ASSERT_EQ(simo_gain_set_get(r.gains, SIMO_GAIN_K_P, Kp, 2), SIMO_OK);
    EXPECT_EQ(Kp[0], K[0]);
    double re[4], im[4];
    ASSERT_EQ(simo_gain_set_closed_loop(r.gains, re, im, 4), SIMO_OK);
    for (double v : re) EXPECT_LT(v, 0.0);
    double residual = 1.0;
    ASSERT_EQ(simo_gain_set_care_residual(r.gains, &residual), SIMO_OK);
    EXPECT_LT(residual, 1e-10);
}

TEST(CApi, ShortBufferIsContractError) {
    Robot r;
    double K[3];
    EXPECT_EQ(simo_gain_set_get(r.gains, SIMO_GAIN_K, K, 3), SIMO_ERR_CONTRACT);
}

TEST(CApi, UncontrollableDesignFails) {
    const double A[4] = {0, 0, 0, 0};
    const double B[2] = {1, 0};
    simo_system* sys = nullptr;
    ASSERT_EQ(simo_linear_system_create(2, 1, A, B, 0, &sys), SIMO_OK);
    simo_linear_model* m = nullptr;
    ASSERT_EQ(simo_linearize(sys, nullptr, nullptr, &m), SIMO_OK);
    simo_controllability_info info{};
    ASSERT_EQ(simo_controllability(m, &info), SIMO_OK);
    EXPECT_EQ(info.rank, 1);
    EXPECT_FALSE(info.controllable);
    simo_gain_set* g = nullptr;
    EXPECT_EQ(simo_design(m, nullptr, 0, 0.0, &g), SIMO_ERR_DESIGN);
    EXPECT_EQ(g, nullptr);
    simo_linear_model_free(m);
    simo_system_free(sys);
}

TEST(CApi, ControlLaws) {
    const double K[4] = {-13.1873, -10.0, -9.3672, -45.1374};
    simo_gain_set* g = nullptr;
    ASSERT_EQ(simo_gain_set_from_k(K, 4, 2, &g), SIMO_OK);
    const double x[4] = {10.0, 0, 0, 0};
    const double c[2] = {0, 0};
    double u = 0.0;
    ASSERT_EQ(simo_control_sfr_ffr(g, x, c, &u), SIMO_OK);
    EXPECT_NEAR(u, 131.873, 1e-9);
    const double e[2] = {-10.0, 0.0};
    const double ed[2] = {0, 0};
    ASSERT_EQ(simo_control_pd(g, e, ed, &u), SIMO_OK);
    EXPECT_NEAR(u, 131.873, 1e-9);
    double re[4], im[4];
    EXPECT_EQ(simo_gain_set_closed_loop(g, re, im, 4), SIMO_ERR_CONTRACT);
    simo_gain_set_free(g);
}

TEST(CApi, SimulateAndMetrics) {
    Robot r;
    const double x0[4] = {10.0, 0, 0, 0};
    const auto s = tilt_scenario(x0, SIMO_PD_DISCRETE, 25.0);
    simo_trajectory* t = nullptr;
    ASSERT_EQ(simo_simulate(r.sys, r.gains, &s, &t), SIMO_OK);
    const size_t len = simo_trajectory_length(t);
    EXPECT_EQ(len, 25001u);
    std::vector<double> u(len);
    ASSERT_EQ(simo_trajectory_signal(t, SIMO_SIGNAL_CONTROL, 0, u.data(), len), SIMO_OK);
    for (double v : u) EXPECT_LE(std::abs(v), 12.0);
    simo_settling_metrics m{};
    ASSERT_EQ(simo_trajectory_metrics(t, 0.1, 1e-3, &m), SIMO_OK);
    EXPECT_TRUE(m.x1_settled);
    EXPECT_GT(m.saturation_fraction, 0.0);

    const auto path = std::filesystem::temp_directory_path() / "simo_c_api_traj.csv";
    ASSERT_EQ(simo_trajectory_write_csv(t, path.string().c_str()), SIMO_OK);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "t,x1_deg,x2_m,x3_degps,x4_mps,u_V,cref1_deg,cref2_m");
    std::filesystem::remove(path);
    simo_trajectory_free(t);
}

TEST(CApi, DivergenceHandsBackPartialTrajectory) {
    Robot r;
    double K[4];
    ASSERT_EQ(simo_gain_set_get(r.gains, SIMO_GAIN_K, K, 4), SIMO_OK);
    for (double& k : K) k = -k;
    simo_gain_set* bad = nullptr;
    ASSERT_EQ(simo_gain_set_from_k(K, 4, 2, &bad), SIMO_OK);
    const double x0[4] = {10.0, 0, 0, 0};
    const auto s = tilt_scenario(x0, SIMO_SFR_CONTINUOUS, 25.0);
    simo_trajectory* t = nullptr;
    EXPECT_EQ(simo_simulate(r.sys, bad, &s, &t), SIMO_ERR_DIVERGENCE);
    ASSERT_NE(t, nullptr);
    EXPECT_TRUE(simo_trajectory_diverged(t));
    EXPECT_GT(simo_trajectory_length(t), 0u);
    EXPECT_NE(std::string(simo_trajectory_diagnostic(t)), "");
    simo_trajectory_free(t);
    simo_gain_set_free(bad);
}

TEST(CApi, ProjectDefaultsAndOverrides) {
    simo_project* p = nullptr;
    ASSERT_EQ(simo_project_default(&p), SIMO_OK);
    simo_project_info info{};
    ASSERT_EQ(simo_project_info_get(p, &info), SIMO_OK);
    EXPECT_EQ(info.state_dim, 4u);
    EXPECT_EQ(info.scenario_count, 4u);
    EXPECT_TRUE(info.weights_defaulted);
    EXPECT_EQ(simo_project_override_timing(p, 5.0, -1, 0.05, -1), SIMO_OK);
    simo_scenario s{};
    ASSERT_EQ(simo_project_scenario(p, 0, &s), SIMO_OK);
    EXPECT_EQ(s.duration, 5.0);
    EXPECT_EQ(s.sample_time, 0.05);
    EXPECT_EQ(simo_project_scenario(p, 99, &s), SIMO_ERR_CONTRACT);
    EXPECT_EQ(simo_project_override_timing(p, 5.0, 0.3, -1, -1), SIMO_ERR_CONFIG);
    simo_project_free(p);
}

TEST(CApi, ProjectLoadErrors) {
    simo_project* p = nullptr;
    EXPECT_EQ(simo_project_load("/nonexistent/x.yaml", &p), SIMO_ERR_IO);
    EXPECT_EQ(p, nullptr);
}

TEST(CApi, JsonRoundTrip) {
    Robot r;
    char* text = nullptr;
    ASSERT_EQ(simo_linear_model_to_json(r.model, &text), SIMO_OK);
    simo_linear_model* back = nullptr;
    ASSERT_EQ(simo_linear_model_from_json(text, &back), SIMO_OK);
    std::vector<double> a(16), b(16);
    simo_linear_model_get(r.model, SIMO_MATRIX_A, a.data(), 16);
    simo_linear_model_get(back, SIMO_MATRIX_A, b.data(), 16);
    EXPECT_EQ(a, b);
    simo_string_free(text);
    simo_linear_model_free(back);
}
