// simo-lqr: linearize, design and simulate from the command line.
// Talks to the library through the C API only.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "simo/simo_lqr.h"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

enum Exit { exit_ok = 0, exit_internal = 1, exit_validation = 2, exit_design = 3, exit_divergence = 4 };

struct Failure {
    int code;
    std::string message;
};

int exit_code_for(simo_status s) {
    switch (s) {
        case SIMO_OK: return exit_ok;
        case SIMO_ERR_CONTRACT:
        case SIMO_ERR_CONFIG:
        case SIMO_ERR_IO: return exit_validation;
        case SIMO_ERR_DESIGN:
        case SIMO_ERR_NUMERICAL: return exit_design;
        case SIMO_ERR_DIVERGENCE: return exit_divergence;
        default: return exit_internal;
    }
}

void ok(simo_status s, const std::string& context) {
    if (s == SIMO_OK) return;
    throw Failure{exit_code_for(s), context + ": " + simo_last_error_message()};
}

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
using Project = std::unique_ptr<simo_project, Deleter<simo_project, simo_project_free>>;
using System = std::unique_ptr<simo_system, Deleter<simo_system, simo_system_free>>;
using Model = std::unique_ptr<simo_linear_model, Deleter<simo_linear_model, simo_linear_model_free>>;
using Gains = std::unique_ptr<simo_gain_set, Deleter<simo_gain_set, simo_gain_set_free>>;
using Traj = std::unique_ptr<simo_trajectory, Deleter<simo_trajectory, simo_trajectory_free>>;

struct Options {
    std::string config;
    std::string out;
    std::string equilibrium;
    std::optional<double> duration, dt, ts, filter_n;
};

// ---- small helpers ----

std::string num(double v, int prec = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    return buf;
}

std::vector<double> parse_vector(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
        if (used == 0 || used != item.size() || !std::isfinite(v))
            throw Failure{exit_validation, "--equilibrium: '" + item + "' is not a number"};
        out.push_back(v);
    }
    if (out.empty()) throw Failure{exit_validation, "--equilibrium: expected comma-separated values"};
    return out;
}

void print_matrix(const char* name, const std::vector<double>& m, std::size_t rows, std::size_t cols) {
    std::printf("%s =\n", name);
    for (std::size_t i = 0; i < rows; ++i) {
        std::printf("  [");
        for (std::size_t j = 0; j < cols; ++j) std::printf("%s%14.6g", j ? " " : "", m[i * cols + j]);
        std::printf(" ]\n");
    }
}

void print_row(const char* name, const std::vector<double>& v) {
    std::printf("%-6s= (", name);
    for (std::size_t i = 0; i < v.size(); ++i) std::printf("%s%.6g", i ? ", " : "", v[i]);
    std::printf(")\n");
}

std::string safe_name(const std::string& s) {
    std::string out;
    for (char c : s) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
    return out.empty() ? "scenario" : out;
}

// ---- pipeline pieces ----

Project open_project(const Options& o) {
    simo_project* raw = nullptr;
    if (o.config.empty())
        ok(simo_project_default(&raw), "default project");
    else
        ok(simo_project_load(o.config.c_str(), &raw), "config '" + o.config + "'");
    Project p(raw);
    if (!o.equilibrium.empty()) {
        const auto xe = parse_vector(o.equilibrium);
        ok(simo_project_set_equilibrium(p.get(), xe.data(), xe.size()), "--equilibrium");
    }
    return p;
}

fs::path output_dir(const Options& o, const simo_project* p) {
    if (!o.out.empty()) return o.out;
    if (const char* env = std::getenv("SIMO_LQR_OUT"); env && *env) return env;
    if (const char* cfg = simo_project_output_dir(p)) return cfg;
    return "simo-out";
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Failure{exit_validation, "cannot create output directory '" + dir.string() + "': " + ec.message()};
}

struct Linearized {
    System plant;
    Model model;
    std::size_t n = 0, q = 0;
    simo_controllability_info ctrb{};
};

Linearized linearize_project(const simo_project* p) {
    Linearized L;
    simo_system* sys = nullptr;
    ok(simo_project_plant(p, &sys), "plant");
    L.plant.reset(sys);
    ok(simo_system_dims(sys, &L.n, &L.q), "plant");
    simo_project_info info{};
    ok(simo_project_info_get(p, &info), "project");
    std::vector<double> xe(L.n, 0.0), eps(L.n, 0.0);
    ok(simo_project_equilibrium(p, xe.data(), xe.size()), "equilibrium");
    int eps_set = 0;
    ok(simo_project_epsilon(p, eps.data(), eps.size(), &eps_set), "epsilon");
    simo_linear_model* m = nullptr;
    ok(simo_linearize(sys, xe.data(), eps_set ? eps.data() : nullptr, &m), "linearize");
    L.model.reset(m);
    ok(simo_controllability(m, &L.ctrb), "controllability");
    return L;
}

std::vector<double> model_part(const simo_linear_model* m, simo_matrix_id id, std::size_t len) {
    std::vector<double> v(len);
    ok(simo_linear_model_get(m, id, v.data(), len), "linear model");
    return v;
}

void report_linearization(const Linearized& L) {
    const auto A = model_part(L.model.get(), SIMO_MATRIX_A, L.n * L.n);
    const auto B = model_part(L.model.get(), SIMO_MATRIX_B, L.n);
    const auto E = model_part(L.model.get(), SIMO_MATRIX_E, L.q * L.n);
    const auto xe = model_part(L.model.get(), SIMO_VECTOR_EQUILIBRIUM, L.n);
    const auto eps = model_part(L.model.get(), SIMO_VECTOR_EPSILON, L.n);
    print_matrix("A", A, L.n, L.n);
    print_matrix("B", B, L.n, 1);
    print_matrix("E", E, L.q, L.n);
    print_row("x_e", xe);
    if (simo_linear_model_epsilon_applied(L.model.get())) {
        std::printf("epsilon_applied = true (x_e was an exact zero; shifted by ");
        for (std::size_t i = 0; i < L.n; ++i) std::printf("%s%g", i ? ", " : "", eps[i]);
        std::printf(")\n");
    } else {
        std::printf("epsilon_applied = false\n");
    }
    for (std::size_t i = 0; i < simo_linear_model_warning_count(L.model.get()); ++i)
        std::printf("warning: %s\n", simo_linear_model_warning(L.model.get(), i));
    std::printf("det(Mc) = %.6e\nrank(Mc) = %d of %zu (sigma max %.3e, min %.3e)\ncontrollable = %s\n",
                L.ctrb.determinant, L.ctrb.rank, L.n, L.ctrb.sigma_max, L.ctrb.sigma_min,
                L.ctrb.controllable ? "yes" : "no");
}

Gains design_from(const simo_project* p, const Linearized& L, bool announce) {
    simo_project_info info{};
    ok(simo_project_info_get(p, &info), "project");
    std::vector<double> q(L.n);
    double r = 1.0;
    ok(simo_project_weights(p, q.data(), q.size(), &r), "weights");
    if (announce && info.weights_defaulted) {
        std::printf("no weights configured; using defaults Q = diag(");
        for (std::size_t i = 0; i < q.size(); ++i) std::printf("%s%g", i ? ", " : "", q[i]);
        std::printf("), R = %g\n", r);
    }
    if (!L.ctrb.controllable)
        std::fprintf(stderr, "note: (A, B) is not controllable (rank %d of %zu); trying a stabilizing design\n",
                     L.ctrb.rank, L.n);
    simo_gain_set* g = nullptr;
    ok(simo_design(L.model.get(), q.data(), q.size(), r, &g), "design");
    return Gains(g);
}

std::vector<double> gain_part(const simo_gain_set* g, simo_gain_id id, std::size_t len) {
    std::vector<double> v(len);
    ok(simo_gain_set_get(g, id, v.data(), len), "gains");
    return v;
}

// ---- verbs ----

int cmd_linearize(const Options& o) {
    Project p = open_project(o);
    Linearized L = linearize_project(p.get());
    report_linearization(L);
    const fs::path dir = output_dir(o, p.get());
    ensure_dir(dir);
    char* text = nullptr;
    ok(simo_linear_model_to_json(L.model.get(), &text), "serialize");
    const fs::path file = dir / "linear_model.json";
    {
        std::ofstream out(file);
        out << text << '\n';
        if (!out) {
            simo_string_free(text);
            throw Failure{exit_validation, "cannot write '" + file.string() + "'"};
        }
    }
    simo_string_free(text);
    std::printf("wrote %s\n", file.string().c_str());
    if (!L.ctrb.controllable) {
        std::fprintf(stderr, "design error: controllability matrix has rank %d < %zu\n", L.ctrb.rank, L.n);
        return exit_design;
    }
    return exit_ok;
}

int cmd_design(const Options& o) {
    Project p = open_project(o);
    Linearized L = linearize_project(p.get());
    Gains g = design_from(p.get(), L, true);
    const auto K = gain_part(g.get(), SIMO_GAIN_K, L.n);
    const auto Kp = gain_part(g.get(), SIMO_GAIN_K_P, L.q);
    const auto Kd = gain_part(g.get(), SIMO_GAIN_K_D, L.q);
    const auto Kr = gain_part(g.get(), SIMO_GAIN_K_REF, L.q);
    std::vector<double> re(L.n), im(L.n);
    ok(simo_gain_set_closed_loop(g.get(), re.data(), im.data(), L.n), "closed loop");
    double residual = 0.0;
    ok(simo_gain_set_care_residual(g.get(), &residual), "residual");
    print_row("K", K);
    print_row("K_p", Kp);
    print_row("K_d", Kd);
    print_row("K_ref", Kr);
    std::printf("closed-loop eigenvalues of A - BK:\n");
    for (std::size_t i = 0; i < L.n; ++i) std::printf("  %12.6g %+12.6gi\n", re[i], im[i]);
    std::printf("Riccati residual = %.3e\n", residual);

    const fs::path dir = output_dir(o, p.get());
    ensure_dir(dir);
    json j;
    j["K"] = K;
    j["K_p"] = Kp;
    j["K_d"] = Kd;
    j["K_ref"] = Kr;
    j["closed_loop_eigenvalues"] = {{"re", re}, {"im", im}};
    j["care_residual"] = residual;
    const fs::path file = dir / "gains.json";
    std::ofstream(file) << j.dump(2) << '\n';
    std::printf("wrote %s\n", file.string().c_str());
    return exit_ok;
}

void apply_timing(const Options& o, simo_project* p) {
    auto positive = [](const std::optional<double>& v, const char* flag) {
        if (v && !(std::isfinite(*v) && *v > 0.0))
            throw Failure{exit_validation, std::string(flag) + " must be a positive number"};
        return v.value_or(-1.0);
    };
    const double d = positive(o.duration, "--duration");
    const double dt = positive(o.dt, "--dt");
    const double ts = positive(o.ts, "--ts");
    const double n = positive(o.filter_n, "--filter-n");
    ok(simo_project_override_timing(p, d, dt, ts, n), "timing");
}

struct RunResult {
    std::string name;
    std::string controller;
    simo_status status = SIMO_OK;
    std::string message;
    simo_settling_metrics metrics{};
    fs::path csv;
};

const char* controller_name(simo_controller c) {
    switch (c) {
        case SIMO_SFR_CONTINUOUS: return "sfr_continuous";
        case SIMO_PD_CONTINUOUS: return "pd_continuous";
        case SIMO_PD_DISCRETE: return "pd_discrete";
        case SIMO_SFR_DISCRETE: return "sfr_discrete";
    }
    return "?";
}

RunResult run_scenario(const simo_system* plant, const simo_gain_set* gains, const simo_scenario& s,
                       const fs::path& dir) {
    RunResult r;
    r.name = s.name;
    r.controller = controller_name(s.controller);
    simo_trajectory* raw = nullptr;
    r.status = simo_simulate(plant, gains, &s, &raw);
    Traj t(raw);
    if (r.status != SIMO_OK) r.message = simo_last_error_message();
    if (!t) return r;
    r.csv = dir / (safe_name(r.name) + ".csv");
    if (simo_trajectory_write_csv(t.get(), r.csv.string().c_str()) != SIMO_OK) {
        if (r.status == SIMO_OK) {
            r.status = SIMO_ERR_IO;
            r.message = simo_last_error_message();
        }
        r.csv.clear();
    }
    simo_trajectory_metrics(t.get(), 0.1, 1e-3, &r.metrics);
    return r;
}

std::vector<RunResult> run_batch(const simo_project* p, const simo_system* plant, const simo_gain_set* gains,
                                 const fs::path& dir) {
    simo_project_info info{};
    ok(simo_project_info_get(p, &info), "project");
    std::vector<simo_scenario> scenarios(info.scenario_count);
    for (std::size_t i = 0; i < scenarios.size(); ++i) ok(simo_project_scenario(p, i, &scenarios[i]), "scenario");
    std::vector<std::future<RunResult>> jobs;
    for (const auto& s : scenarios)
        jobs.push_back(std::async(std::launch::async, run_scenario, plant, gains, std::cref(s), std::cref(dir)));
    std::vector<RunResult> results;
    for (auto& j : jobs) results.push_back(j.get());
    return results;
}

std::string settle_text(int settled, double t) { return settled ? num(t, 4) + " s" : "not settled"; }

void print_summary(const std::vector<RunResult>& results, const fs::path& dir) {
    std::printf("%-18s %-15s %-12s %-12s %-10s %-8s %s\n", "scenario", "controller", "x1 settle", "x2 settle",
                "max|u| V", "sat %", "status");
    std::ofstream csv(dir / "summary.csv");
    csv << "scenario,controller,x1_settling_s,x2_settling_s,max_abs_u_V,saturation_fraction,status\n";
    for (const auto& r : results) {
        const std::string status = r.status == SIMO_OK ? "ok" : simo_status_string(r.status);
        std::printf("%-18s %-15s %-12s %-12s %-10s %-8s %s\n", r.name.c_str(), r.controller.c_str(),
                    settle_text(r.metrics.x1_settled, r.metrics.x1_settling_time).c_str(),
                    settle_text(r.metrics.x2_settled, r.metrics.x2_settling_time).c_str(),
                    num(r.metrics.max_abs_u, 4).c_str(), num(100.0 * r.metrics.saturation_fraction, 3).c_str(),
                    status.c_str());
        if (r.status != SIMO_OK) std::printf("    %s\n", r.message.c_str());
        csv << r.name << ',' << r.controller << ','
            << (r.metrics.x1_settled ? num(r.metrics.x1_settling_time, 10) : "") << ','
            << (r.metrics.x2_settled ? num(r.metrics.x2_settling_time, 10) : "") << ','
            << num(r.metrics.max_abs_u, 10) << ',' << num(r.metrics.saturation_fraction, 10) << ',' << status
            << '\n';
    }
}

int cmd_simulate(const Options& o) {
    Project p = open_project(o);
    apply_timing(o, p.get());
    Linearized L = linearize_project(p.get());
    Gains g = design_from(p.get(), L, true);
    const fs::path dir = output_dir(o, p.get());
    ensure_dir(dir);
    const auto results = run_batch(p.get(), L.plant.get(), g.get(), dir);
    print_summary(results, dir);
    int code = exit_ok;
    for (const auto& r : results) {
        if (!r.csv.empty()) std::printf("wrote %s\n", r.csv.string().c_str());
        code = std::max(code, exit_code_for(r.status));
    }
    std::printf("wrote %s\n", (dir / "summary.csv").string().c_str());
    return code;
}

// ---- reproduction table for the built-in robot ----

struct Row {
    std::string item, expected, got;
    bool pass;
};

std::vector<double> signal(const simo_trajectory* t, simo_signal_id id, std::size_t col = 0) {
    std::vector<double> v(simo_trajectory_length(t));
    ok(simo_trajectory_signal(t, id, col, v.data(), v.size()), "trajectory");
    return v;
}

int cmd_reproduce(const Options& o) {
    Project p = open_project(Options{});
    apply_timing(o, p.get());
    Linearized L = linearize_project(p.get());
    if (L.n != 4) throw Failure{exit_validation, "reproduction runs on the built-in robot"};
    std::vector<Row> rows;

    // published linear model
    const double A3[] = {1.4188, 5.7939e-7, -4.3319, 3274.4};
    const double A4[] = {-0.1128, -6.6786e-12, 0.8586, -648.99};
    const double B[] = {0, 0, -628.4856, 124.4993};
    const auto A = model_part(L.model.get(), SIMO_MATRIX_A, 16);
    const auto Bm = model_part(L.model.get(), SIMO_MATRIX_B, 4);
    auto within = [](double got, double want) {
        return std::abs(want) < 1e-6 ? std::abs(got - want) <= 1e-9 : std::abs(got - want) <= 1e-3 * std::abs(want);
    };
    auto add_entry = [&](const std::string& name, double got, double want) {
        rows.push_back({name, num(want, 6), num(got, 6), within(got, want)});
    };
    for (int j = 0; j < 4; ++j) add_entry("A3" + std::to_string(j + 1), A[8 + j], A3[j]);
    for (int j = 0; j < 4; ++j) add_entry("A4" + std::to_string(j + 1), A[12 + j], A4[j]);
    for (int i = 2; i < 4; ++i) add_entry("B" + std::to_string(i + 1), Bm[i], B[i]);
    rows.push_back({"det(Mc)", "-1.4517e+13", num(L.ctrb.determinant, 5),
                    std::abs(L.ctrb.determinant + 1.4517e13) <= 1e-3 * 1.4517e13});
    rows.push_back({"rank(Mc)", "4", std::to_string(L.ctrb.rank), L.ctrb.rank == 4});

    Gains g = design_from(p.get(), L, false);
    const auto K = gain_part(g.get(), SIMO_GAIN_K, 4);
    const double Kpub[] = {-13.1881, -10.0, -9.3717, -45.1452};
    for (int i = 0; i < 4; ++i)
        rows.push_back({"K" + std::to_string(i + 1), num(Kpub[i], 6), num(K[i], 6),
                        std::abs(K[i] - Kpub[i]) <= 1e-3 * std::abs(Kpub[i])});
    double residual = 0.0;
    ok(simo_gain_set_care_residual(g.get(), &residual), "residual");
    rows.push_back({"Riccati residual", "< 1e-9", num(residual, 3), residual < 1e-9});
    std::vector<double> re(4), im(4);
    ok(simo_gain_set_closed_loop(g.get(), re.data(), im.data(), 4), "closed loop");
    const double abscissa = *std::max_element(re.begin(), re.end());
    rows.push_back({"max Re eig(A-BK)", "< 0", num(abscissa, 4), abscissa < 0});

    // the four tilt experiments; CSVs are written for plotting
    const fs::path dir = output_dir(o, p.get());
    ensure_dir(dir);
    const auto results = run_batch(p.get(), L.plant.get(), g.get(), dir);
    for (const auto& r : results)
        rows.push_back({r.name + " x1 settle", "<= 20 s", settle_text(r.metrics.x1_settled, r.metrics.x1_settling_time),
                        r.status == SIMO_OK && r.metrics.x1_settled && r.metrics.x1_settling_time <= 20.0});

    simo_scenario s{};
    ok(simo_project_scenario(p.get(), 0, &s), "scenario");
    auto run = [&](simo_controller c) {
        simo_scenario copy = s;
        copy.controller = c;
        copy.saturate = -1;
        simo_trajectory* raw = nullptr;
        ok(simo_simulate(L.plant.get(), g.get(), &copy, &raw), controller_name(c));
        return Traj(raw);
    };
    const Traj sfr = run(SIMO_SFR_CONTINUOUS);
    const Traj pd = run(SIMO_PD_CONTINUOUS);
    const Traj pdd = run(SIMO_PD_DISCRETE);
    const auto t = signal(sfr.get(), SIMO_SIGNAL_TIME);
    const auto x1 = signal(sfr.get(), SIMO_SIGNAL_STATE, 0);
    const auto u = signal(sfr.get(), SIMO_SIGNAL_CONTROL);
    const auto u_pd = signal(pd.get(), SIMO_SIGNAL_CONTROL);
    const auto u_dd = signal(pdd.get(), SIMO_SIGNAL_CONTROL);
    const auto x1_dd = signal(pdd.get(), SIMO_SIGNAL_STATE, 0);
    const double tail_from = std::min(20.0, 0.8 * t.back());
    double x1_tail = 0, u_tail = 0, du = 0, du_dd = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] >= tail_from - 1e-9) {
            x1_tail = std::max(x1_tail, std::abs(x1[i]));
            u_tail = std::max(u_tail, std::abs(u[i]));
        }
        du = std::max(du, std::abs(u[i] - u_pd[i]));
        du_dd = std::max(du_dd, std::abs(u_dd[i] - u_pd[i]));
    }
    const std::string tail = "t >= " + num(tail_from, 3) + " s";
    rows.push_back({"SFR max|x1| " + tail, "< 0.1 deg", num(x1_tail, 4), x1_tail < 0.1});
    rows.push_back({"SFR max|u| " + tail, "< 0.01 V", num(u_tail, 4), u_tail < 0.01});
    rows.push_back({"SFR vs PD max|du|", "< 1e-9 V", num(du, 3), du < 1e-9});
    rows.push_back({"discrete PD |x1(end)|", "< 0.5 deg", num(std::abs(x1_dd.back()), 4), std::abs(x1_dd.back()) < 0.5});
    rows.push_back({"discrete vs continuous max|du|", "> 0.1 V", num(du_dd, 4), du_dd > 0.1});

    int passed = 0;
    std::printf("%-32s %-14s %-14s %s\n", "item", "expected", "got", "result");
    for (const auto& r : rows) {
        std::printf("%-32s %-14s %-14s %s\n", r.item.c_str(), r.expected.c_str(), r.got.c_str(),
                    r.pass ? "PASS" : "FAIL");
        passed += r.pass;
    }
    std::printf("%d of %zu items reproduced; trajectories in %s\n", passed, rows.size(), dir.string().c_str());
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LQR-based PD tuning for single-input multiple-output plants"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(simo_version()));
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "project YAML (default: built-in balancing robot)");
        sub->add_option("--out", o.out, "output directory (env SIMO_LQR_OUT)");
        sub->add_option("--equilibrium", o.equilibrium, "operating point, comma separated");
    };
    auto timing = [&](CLI::App* sub) {
        sub->add_option("--duration", o.duration, "simulated time, s");
        sub->add_option("--dt", o.dt, "integrator step, s");
        sub->add_option("--ts", o.ts, "sample time of discrete controllers, s");
        sub->add_option("--filter-n", o.filter_n, "derivative filter coefficient N");
    };
    auto* lin = app.add_subcommand("linearize", "linear model and controllability report");
    common(lin);
    auto* des = app.add_subcommand("design", "LQR gains and their PD split");
    common(des);
    auto* sim = app.add_subcommand("simulate", "run every configured scenario, one CSV each");
    common(sim);
    timing(sim);
    auto* rep = app.add_subcommand("reproduce-paper", "compare the built-in robot against the published numbers");
    rep->add_option("--out", o.out, "output directory (env SIMO_LQR_OUT)");
    timing(rep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_validation;
    }

    try {
        if (*lin) return cmd_linearize(o);
        if (*des) return cmd_design(o);
        if (*sim) return cmd_simulate(o);
        if (*rep) return cmd_reproduce(o);
    } catch (const Failure& f) {
        std::fprintf(stderr, "error: %s\n", f.message.c_str());
        return f.code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_internal;
    }
    return exit_internal;
}
