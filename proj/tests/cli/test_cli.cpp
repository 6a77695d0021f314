#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + SIMO_CLI + std::string(" ") + args + " 2>&1";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string data(const char* name) { return (fs::path(SIMO_TEST_DATA) / name).string(); }

class Cli : public ::testing::Test {
protected:
    fs::path dir;
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir = fs::temp_directory_path() / (std::string("simo_cli_") + info->name());
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }
    std::string out_flag() const { return "--out " + dir.string(); }
};

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
    std::vector<std::vector<std::string>> rows;
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_F(Cli, LinearizeDefaultRobot) {
    const auto r = run("linearize " + out_flag());
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("epsilon_applied = true"), std::string::npos);
    EXPECT_NE(r.out.find("det(Mc)"), std::string::npos);
    EXPECT_NE(r.out.find("rank(Mc) = 4"), std::string::npos);
    EXPECT_EQ(r.out.find("warning"), std::string::npos) << r.out;
    std::ifstream in(dir / "linear_model.json");
    const auto j = nlohmann::json::parse(in);
    EXPECT_EQ(j["format"], "simo-linear-model/1");
    EXPECT_EQ(j["epsilon_applied"], true);
    EXPECT_DOUBLE_EQ(j["epsilon"][0].get<double>(), 1e-4);
}

TEST_F(Cli, ExplicitZeroEquilibriumIsShifted) {
    const auto r = run("linearize --equilibrium 0,0,0,0 " + out_flag());
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("epsilon_applied = true"), std::string::npos);
}

TEST_F(Cli, BadEquilibriumIsValidationError) {
    EXPECT_EQ(run("linearize --equilibrium 1,2 " + out_flag()).code, 2);
    EXPECT_EQ(run("linearize --equilibrium 1,x,0,0 " + out_flag()).code, 2);
}

TEST_F(Cli, NonEquilibriumWarns) {
    const auto r = run("linearize --equilibrium 10,0,0,0 " + out_flag());
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("not an equilibrium"), std::string::npos);
}

TEST_F(Cli, UncontrollableSystemIsDesignError) {
    const auto lin = run("linearize --config " + data("uncontrollable.yaml") + " " + out_flag());
    EXPECT_EQ(lin.code, 3) << lin.out;
    EXPECT_NE(lin.out.find("rank(Mc) = 1 of 2"), std::string::npos) << lin.out;
    const auto des = run("design --config " + data("uncontrollable.yaml") + " " + out_flag());
    EXPECT_EQ(des.code, 3) << des.out;
}

TEST_F(Cli, DesignAnnouncesDefaults) {
    const auto r = run("design " + out_flag());
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("Q = diag(100, 100, 1, 1), R = 1"), std::string::npos) << r.out;
    for (const char* key : {"K     =", "K_p   =", "K_d   =", "K_ref =", "closed-loop eigenvalues"})
        EXPECT_NE(r.out.find(key), std::string::npos) << key;
    std::ifstream in(dir / "gains.json");
    const auto j = nlohmann::json::parse(in);
    const double published[] = {-13.1881, -10.0, -9.3717, -45.1452};
    for (int i = 0; i < 4; ++i)
        EXPECT_NEAR(j["K"][i].get<double>(), published[i], 1e-3 * std::abs(published[i]));
    EXPECT_EQ(j["K_ref"], j["K_p"]);
}

TEST_F(Cli, DesignWithIdentityWeightsIsStable) {
    const auto r = run("design --config " + data("identity_weights.yaml") + " " + out_flag());
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out.find("no weights configured"), std::string::npos);
    std::ifstream in(dir / "gains.json");
    const auto j = nlohmann::json::parse(in);
    for (const auto& re : j["closed_loop_eigenvalues"]["re"]) EXPECT_LT(re.get<double>(), 0.0);
}

TEST_F(Cli, SimulateDefaultBatch) {
    const auto r = run("simulate " + out_flag());
    ASSERT_EQ(r.code, 0) << r.out;
    for (const char* name : {"sfr_continuous", "pd_continuous", "sfr_discrete", "pd_discrete"})
        EXPECT_TRUE(fs::exists(dir / (std::string(name) + ".csv"))) << name;
    const auto summary = read_csv(dir / "summary.csv");
    ASSERT_EQ(summary.size(), 5u);
    for (std::size_t i = 1; i < summary.size(); ++i) {
        ASSERT_FALSE(summary[i][2].empty()) << summary[i][0] << " never settled";
        EXPECT_LE(std::stod(summary[i][2]), 20.0) << summary[i][0];
        EXPECT_EQ(summary[i][6], "ok");
    }
    const auto sfr = read_csv(dir / "sfr_continuous.csv");
    const auto pd = read_csv(dir / "pd_continuous.csv");
    ASSERT_EQ(sfr.size(), pd.size());
    ASSERT_EQ(sfr.size(), 25002u);
    EXPECT_EQ(sfr[0][5], "u_V");
    double worst = 0.0;
    for (std::size_t i = 1; i < sfr.size(); ++i)
        worst = std::max(worst, std::abs(std::stod(sfr[i][5]) - std::stod(pd[i][5])));
    EXPECT_LT(worst, 1e-9);
}

TEST_F(Cli, RepeatRunsAreByteIdentical) {
    const fs::path a = dir / "a", b = dir / "b";
    ASSERT_EQ(run("simulate --duration 3 --out " + a.string()).code, 0);
    ASSERT_EQ(run("simulate --duration 3 --out " + b.string()).code, 0);
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    for (const char* name : {"sfr_continuous.csv", "pd_discrete.csv", "summary.csv"}) {
        const auto x = slurp(a / name);
        EXPECT_FALSE(x.empty());
        EXPECT_EQ(x, slurp(b / name)) << name;
    }
}

TEST_F(Cli, ZeroDurationIsRejectedBeforeAnyRun) {
    const auto r = run("simulate --duration 0 " + out_flag());
    EXPECT_EQ(r.code, 2) << r.out;
    EXPECT_TRUE(fs::is_empty(dir));
}

TEST_F(Cli, TimingOverrides) {
    const auto r = run("simulate --duration 2 --dt 0.002 --ts 0.05 --filter-n 20 " + out_flag());
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(read_csv(dir / "pd_discrete.csv").size(), 1002u);
    EXPECT_EQ(run("simulate --duration 1 --ts 0.0125 " + out_flag()).code, 2);
}

TEST_F(Cli, DivergenceIsReportedPerScenario) {
    const auto r = run("simulate --config " + data("mixed_batch.yaml") + " " + out_flag());
    EXPECT_EQ(r.code, 4) << r.out;
    EXPECT_TRUE(fs::exists(dir / "steady.csv"));
    EXPECT_TRUE(fs::exists(dir / "too_slow.csv"));
    const auto summary = read_csv(dir / "summary.csv");
    ASSERT_EQ(summary.size(), 3u);
    EXPECT_EQ(summary[1][6], "ok");
    EXPECT_NE(summary[2][6], "ok");
}

TEST_F(Cli, OutputDirectoryFromEnvironment) {
    const auto r = run("design", "SIMO_LQR_OUT=" + dir.string());
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_TRUE(fs::exists(dir / "gains.json"));
}

TEST_F(Cli, MissingConfigIsValidationError) {
    const auto r = run("design --config /nonexistent/project.yaml " + out_flag());
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("cannot open"), std::string::npos) << r.out;
}

TEST_F(Cli, UnknownVerbIsValidationError) { EXPECT_EQ(run("fly").code, 2); }

TEST_F(Cli, ReproductionTable) {
    const auto r = run("reproduce-paper " + out_flag());
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("items reproduced"), std::string::npos);
    for (const char* row : {"K1", "K4", "rank(Mc)", "SFR vs PD max|du|"}) {
        const auto at = r.out.find(row);
        ASSERT_NE(at, std::string::npos) << row;
        const auto eol = r.out.find('\n', at);
        EXPECT_NE(r.out.substr(at, eol - at).find("PASS"), std::string::npos) << r.out.substr(at, eol - at);
    }
    EXPECT_TRUE(fs::exists(dir / "pd_discrete.csv"));
}
