#include "simo/simo_lqr.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <new>
#include <optional>
#include <string>

#include "simo/error.hpp"
#include "simo/linearize.hpp"
#include "simo/lqr.hpp"
#include "simo/project.hpp"
#include "simo/robot.hpp"
#include "simo/sim.hpp"

struct simo_project {
    simo::ProjectConfig cfg;
};

struct simo_system {
    simo::AffineSystem sys;
};

struct simo_linear_model {
    simo::LinearModel model;
};

struct simo_gain_set {
    simo::GainSet gains;
    std::optional<simo::LqrDesign> design;
};

struct simo_trajectory {
    simo::Trajectory traj;
};

namespace {

thread_local std::string g_last_error;

simo_status to_status(simo::ErrorKind kind) {
    switch (kind) {
        case simo::ErrorKind::contract: return SIMO_ERR_CONTRACT;
        case simo::ErrorKind::configuration: return SIMO_ERR_CONFIG;
        case simo::ErrorKind::design: return SIMO_ERR_DESIGN;
        case simo::ErrorKind::divergence: return SIMO_ERR_DIVERGENCE;
        case simo::ErrorKind::numerical:
        case simo::ErrorKind::numerical_domain: return SIMO_ERR_NUMERICAL;
        case simo::ErrorKind::io: return SIMO_ERR_IO;
    }
    return SIMO_ERR_INTERNAL;
}

template <class F>
simo_status guarded(F&& body) noexcept {
    try {
        g_last_error.clear();
        return body();
    } catch (const simo::Error& e) {
        g_last_error = e.what();
        return to_status(e.kind());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return SIMO_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SIMO_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown exception";
        return SIMO_ERR_INTERNAL;
    }
}

template <class T>
void need(const T* ptr, const char* what) {
    if (ptr == nullptr) simo::fail(simo::ErrorKind::contract, std::string(what) + " must not be NULL");
}

void copy_out(const Eigen::MatrixXd& m, double* buf, size_t len) {
    need(buf, "output buffer");
    const auto count = static_cast<size_t>(m.size());
    if (len < count)
        simo::fail(simo::ErrorKind::contract, "output buffer holds " + std::to_string(len) + " values, " +
                                                   std::to_string(count) + " needed");
    // row-major
    size_t k = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) buf[k++] = m(i, j);
}

Eigen::VectorXd vec_in(const double* data, size_t len) {
    need(data, "input vector");
    return Eigen::Map<const Eigen::VectorXd>(data, static_cast<Eigen::Index>(len));
}

simo::ControllerKind to_kind(simo_controller c) {
    switch (c) {
        case SIMO_SFR_CONTINUOUS: return simo::ControllerKind::sfr_continuous;
        case SIMO_PD_CONTINUOUS: return simo::ControllerKind::pd_continuous;
        case SIMO_PD_DISCRETE: return simo::ControllerKind::pd_discrete;
        case SIMO_SFR_DISCRETE: return simo::ControllerKind::sfr_discrete;
    }
    simo::fail(simo::ErrorKind::contract, "unknown controller kind");
}

simo_controller from_kind(simo::ControllerKind k) {
    switch (k) {
        case simo::ControllerKind::sfr_continuous: return SIMO_SFR_CONTINUOUS;
        case simo::ControllerKind::pd_continuous: return SIMO_PD_CONTINUOUS;
        case simo::ControllerKind::pd_discrete: return SIMO_PD_DISCRETE;
        case simo::ControllerKind::sfr_discrete: return SIMO_SFR_DISCRETE;
    }
    return SIMO_SFR_CONTINUOUS;
}

simo::ScenarioConfig to_scenario(const simo_scenario& s) {
    simo::ScenarioConfig sc;
    if (s.name) sc.name = s.name;
    sc.controller = to_kind(s.controller);
    sc.initial_state = vec_in(s.initial_state, s.initial_state_len);
    if (s.reference && s.reference_len) sc.reference = vec_in(s.reference, s.reference_len);
    sc.duration = s.duration;
    sc.step = s.step;
    sc.sample_time = s.sample_time;
    sc.filter_n = s.filter_n;
    if (s.saturate >= 0) sc.saturate = s.saturate != 0;
    sc.saturation = {s.u_min, s.u_max};
    return sc;
}

}  // namespace

extern "C" {

const char* simo_last_error_message(void) { return g_last_error.c_str(); }

const char* simo_status_string(simo_status status) {
    switch (status) {
        case SIMO_OK: return "ok";
        case SIMO_ERR_CONTRACT: return "contract violation";
        case SIMO_ERR_CONFIG: return "validation error";
        case SIMO_ERR_DESIGN: return "design error";
        case SIMO_ERR_DIVERGENCE: return "simulation divergence";
        case SIMO_ERR_NUMERICAL: return "numerical error";
        case SIMO_ERR_IO: return "I/O error";
        case SIMO_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* simo_version(void) { return "0.1.0"; }

void simo_string_free(char* s) { delete[] s; }

/* ---- project ---- */

simo_status simo_project_default(simo_project** out) {
    return guarded([&] {
        need(out, "out");
        *out = new simo_project{simo::default_project()};
        return SIMO_OK;
    });
}

simo_status simo_project_load(const char* path, simo_project** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = new simo_project{simo::load_project(path)};
        return SIMO_OK;
    });
}

void simo_project_free(simo_project* project) { delete project; }

simo_status simo_project_info_get(const simo_project* project, simo_project_info* out) {
    return guarded([&] {
        need(project, "project");
        need(out, "out");
        const simo::AffineSystem plant = simo::build_plant(project->cfg.plant);
        out->state_dim = static_cast<size_t>(plant.state_dim());
        out->output_dim = static_cast<size_t>(plant.output_dim());
        out->scenario_count = project->cfg.scenarios.size();
        out->weights_defaulted = project->cfg.weights_defaulted ? 1 : 0;
        out->scenarios_defaulted = project->cfg.scenarios_defaulted ? 1 : 0;
        out->has_equilibrium = project->cfg.equilibrium ? 1 : 0;
        return SIMO_OK;
    });
}

simo_status simo_project_plant(const simo_project* project, simo_system** out) {
    return guarded([&] {
        need(project, "project");
        need(out, "out");
        *out = new simo_system{simo::build_plant(project->cfg.plant)};
        return SIMO_OK;
    });
}

simo_status simo_project_equilibrium(const simo_project* project, double* buf, size_t len) {
    return guarded([&] {
        need(project, "project");
        const int n = simo::build_plant(project->cfg.plant).state_dim();
        copy_out(project->cfg.equilibrium.value_or(Eigen::VectorXd::Zero(n)), buf, len);
        return SIMO_OK;
    });
}

simo_status simo_project_set_equilibrium(simo_project* project, const double* x_e, size_t len) {
    return guarded([&] {
        need(project, "project");
        const int n = simo::build_plant(project->cfg.plant).state_dim();
        if (len != static_cast<size_t>(n))
            simo::fail(simo::ErrorKind::configuration, "equilibrium needs " + std::to_string(n) + " components");
        const Eigen::VectorXd v = vec_in(x_e, len);
        if (!v.allFinite()) simo::fail(simo::ErrorKind::configuration, "equilibrium must be finite");
        project->cfg.equilibrium = v;
        return SIMO_OK;
    });
}

simo_status simo_project_epsilon(const simo_project* project, double* buf, size_t len, int* is_set) {
    return guarded([&] {
        need(project, "project");
        need(is_set, "is_set");
        const int n = simo::build_plant(project->cfg.plant).state_dim();
        *is_set = project->cfg.epsilon ? 1 : 0;
        copy_out(project->cfg.epsilon.value_or(Eigen::VectorXd::Constant(n, simo::default_epsilon)), buf, len);
        return SIMO_OK;
    });
}

simo_status simo_project_weights(const simo_project* project, double* q_diag, size_t len, double* r) {
    return guarded([&] {
        need(project, "project");
        need(r, "r");
        copy_out(project->cfg.weights.q_diag, q_diag, len);
        *r = project->cfg.weights.r;
        return SIMO_OK;
    });
}

simo_status simo_project_set_weights(simo_project* project, const double* q_diag, size_t len, double r) {
    return guarded([&] {
        need(project, "project");
        simo::LqrWeights w{vec_in(q_diag, len), r};
        w.validate(simo::build_plant(project->cfg.plant).state_dim());
        project->cfg.weights = w;
        project->cfg.weights_defaulted = false;
        return SIMO_OK;
    });
}

simo_status simo_project_override_timing(simo_project* project, double duration, double step,
                                         double sample_time, double filter_n) {
    return guarded([&] {
        need(project, "project");
        auto check = [](double v, const char* what) {
            if (std::isnan(v)) simo::fail(simo::ErrorKind::configuration, std::string(what) + " is not a number");
        };
        check(duration, "duration");
        check(step, "dt");
        check(sample_time, "ts");
        check(filter_n, "filter N");
        auto scenarios = project->cfg.scenarios;
        for (auto& s : scenarios) {
            if (duration > 0) s.duration = duration;
            if (step > 0) s.step = step;
            if (sample_time > 0) s.sample_time = sample_time;
            if (filter_n > 0) s.filter_n = filter_n;
        }
        const simo::AffineSystem plant = simo::build_plant(project->cfg.plant);
        for (const auto& s : scenarios) s.validate(plant);
        project->cfg.scenarios = std::move(scenarios);
        return SIMO_OK;
    });
}

simo_status simo_project_scenario(const simo_project* project, size_t index, simo_scenario* out) {
    return guarded([&] {
        need(project, "project");
        need(out, "out");
        if (index >= project->cfg.scenarios.size())
            simo::fail(simo::ErrorKind::contract, "scenario index out of range");
        const auto& s = project->cfg.scenarios[index];
        out->name = s.name.c_str();
        out->controller = from_kind(s.controller);
        out->initial_state = s.initial_state.data();
        out->initial_state_len = static_cast<size_t>(s.initial_state.size());
        out->reference = s.reference.size() ? s.reference.data() : nullptr;
        out->reference_len = static_cast<size_t>(s.reference.size());
        out->duration = s.duration;
        out->step = s.step;
        out->sample_time = s.sample_time;
        out->filter_n = s.filter_n;
        out->saturate = s.saturate ? (*s.saturate ? 1 : 0) : -1;
        out->u_min = s.saturation.lower;
        out->u_max = s.saturation.upper;
        return SIMO_OK;
    });
}

const char* simo_project_output_dir(const simo_project* project) {
    if (project == nullptr || project->cfg.output_dir.empty()) return nullptr;
    return project->cfg.output_dir.c_str();
}

/* ---- plants ---- */

void simo_robot_default_params(simo_robot_params* out) {
    if (out == nullptr) return;
    const simo::robot::RobotParams p;
    *out = {p.I_n, p.I_k, p.m_n, p.m_k, p.l, p.R, p.r, p.k, p.k_e, p.k_m, p.g, SIMO_ANGLE_DEGREES};
}

simo_status simo_robot_create(const simo_robot_params* params, simo_system** out) {
    return guarded([&] {
        need(out, "out");
        simo::robot::RobotParams p;
        if (params) {
            p.I_n = params->I_n;
            p.I_k = params->I_k;
            p.m_n = params->m_n;
            p.m_k = params->m_k;
            p.l = params->l;
            p.R = params->R;
            p.r = params->r;
            p.k = params->k;
            p.k_e = params->k_e;
            p.k_m = params->k_m;
            p.g = params->g;
            p.angle_unit = params->angle_unit == SIMO_ANGLE_RADIANS ? simo::robot::AngleUnit::radians
                                                                    : simo::robot::AngleUnit::degrees;
        }
        *out = new simo_system{simo::robot::make_robot_system(p)};
        return SIMO_OK;
    });
}

simo_status simo_linear_system_create(size_t n, size_t q, const double* A, const double* B, int mechanical,
                                      simo_system** out) {
    return guarded([&] {
        need(A, "A");
        need(B, "B");
        need(out, "out");
        if (n != 2 * q || q == 0) simo::fail(simo::ErrorKind::configuration, "linear system needs n = 2q > 0");
        using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
        const Eigen::MatrixXd Am =
            Eigen::Map<const RowMajor>(A, static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        *out = new simo_system{simo::make_linear_system(Am, vec_in(B, n), static_cast<int>(q), mechanical != 0)};
        return SIMO_OK;
    });
}

void simo_system_free(simo_system* sys) { delete sys; }

simo_status simo_system_dims(const simo_system* sys, size_t* n, size_t* q) {
    return guarded([&] {
        need(sys, "system");
        if (n) *n = static_cast<size_t>(sys->sys.state_dim());
        if (q) *q = static_cast<size_t>(sys->sys.output_dim());
        return SIMO_OK;
    });
}

simo_status simo_system_evaluate(const simo_system* sys, const double* x, double u, double* xdot) {
    return guarded([&] {
        need(sys, "system");
        const auto n = static_cast<size_t>(sys->sys.state_dim());
        copy_out(simo::evaluate_dynamics(sys->sys, vec_in(x, n), u), xdot, n);
        return SIMO_OK;
    });
}

simo_status simo_system_jacobian(const simo_system* sys, const double* x, int numeric, double* J) {
    return guarded([&] {
        need(sys, "system");
        const auto n = static_cast<size_t>(sys->sys.state_dim());
        const Eigen::VectorXd xv = vec_in(x, n);
        copy_out(numeric ? simo::numeric_jacobian(sys->sys, xv) : simo::drift_jacobian(sys->sys, xv), J, n * n);
        return SIMO_OK;
    });
}

/* ---- linearization ---- */

simo_status simo_linearize(const simo_system* sys, const double* x_e, const double* epsilon,
                           simo_linear_model** out) {
    return guarded([&] {
        need(sys, "system");
        need(out, "out");
        const auto n = static_cast<size_t>(sys->sys.state_dim());
        const Eigen::VectorXd xe = x_e ? vec_in(x_e, n) : Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
        simo::LinearizeOptions opts;
        if (epsilon) opts.epsilon = vec_in(epsilon, n);
        *out = new simo_linear_model{simo::linearize(sys->sys, xe, opts)};
        return SIMO_OK;
    });
}

void simo_linear_model_free(simo_linear_model* model) { delete model; }

simo_status simo_linear_model_dims(const simo_linear_model* model, size_t* n, size_t* q) {
    return guarded([&] {
        need(model, "model");
        if (n) *n = static_cast<size_t>(model->model.state_dim());
        if (q) *q = static_cast<size_t>(model->model.output_dim());
        return SIMO_OK;
    });
}

simo_status simo_linear_model_get(const simo_linear_model* model, simo_matrix_id which, double* buf, size_t len) {
    return guarded([&] {
        need(model, "model");
        const auto& m = model->model;
        switch (which) {
            case SIMO_MATRIX_A: copy_out(m.A, buf, len); break;
            case SIMO_MATRIX_B: copy_out(m.B, buf, len); break;
            case SIMO_MATRIX_E: copy_out(m.E, buf, len); break;
            case SIMO_VECTOR_EQUILIBRIUM: copy_out(m.x_e, buf, len); break;
            case SIMO_VECTOR_EPSILON: copy_out(m.epsilon, buf, len); break;
            default: simo::fail(simo::ErrorKind::contract, "unknown matrix id");
        }
        return SIMO_OK;
    });
}

int simo_linear_model_epsilon_applied(const simo_linear_model* model) {
    return model && model->model.epsilon_applied ? 1 : 0;
}

size_t simo_linear_model_warning_count(const simo_linear_model* model) {
    return model ? model->model.warnings.size() : 0;
}

const char* simo_linear_model_warning(const simo_linear_model* model, size_t index) {
    if (!model || index >= model->model.warnings.size()) return nullptr;
    return model->model.warnings[index].c_str();
}

simo_status simo_controllability(const simo_linear_model* model, simo_controllability_info* out) {
    return guarded([&] {
        need(model, "model");
        need(out, "out");
        const auto rep = simo::controllability(model->model);
        out->rank = rep.rank;
        out->determinant = rep.determinant;
        out->controllable = rep.controllable ? 1 : 0;
        out->sigma_max = rep.singular_values[0];
        out->sigma_min = rep.singular_values[rep.singular_values.size() - 1];
        return SIMO_OK;
    });
}

simo_status simo_linear_model_to_json(const simo_linear_model* model, char** out) {
    return guarded([&] {
        need(model, "model");
        need(out, "out");
        const auto rep = simo::controllability(model->model);
        const std::string text = simo::linear_model_to_json(model->model, &rep);
        char* s = new char[text.size() + 1];
        std::memcpy(s, text.c_str(), text.size() + 1);
        *out = s;
        return SIMO_OK;
    });
}

simo_status simo_linear_model_from_json(const char* text, simo_linear_model** out) {
    return guarded([&] {
        need(text, "text");
        need(out, "out");
        *out = new simo_linear_model{simo::linear_model_from_json(text)};
        return SIMO_OK;
    });
}

/* ---- design ---- */

simo_status simo_design(const simo_linear_model* model, const double* q_diag, size_t len, double r,
                        simo_gain_set** out) {
    return guarded([&] {
        need(model, "model");
        need(out, "out");
        const auto& m = model->model;
        simo::LqrWeights w = simo::LqrWeights::defaults(m.state_dim());
        if (q_diag) w.q_diag = vec_in(q_diag, len);
        if (r > 0) w.r = r;
        if (!simo::controllability(m).controllable && !simo::is_stabilizable(m.A, m.B))
            simo::fail(simo::ErrorKind::design, "the linear model is not stabilizable");
        auto design = simo::design_lqr(m.A, m.B, m.output_dim(), w);
        *out = new simo_gain_set{design.gains, std::move(design)};
        return SIMO_OK;
    });
}

simo_status simo_gain_set_from_k(const double* K, size_t n, size_t q, simo_gain_set** out) {
    return guarded([&] {
        need(out, "out");
        if (n != 2 * q || q == 0) simo::fail(simo::ErrorKind::contract, "gain needs n = 2q > 0");
        const Eigen::RowVectorXd k = vec_in(K, n).transpose();
        *out = new simo_gain_set{simo::GainSet::from_state_feedback(k, static_cast<int>(q)), std::nullopt};
        return SIMO_OK;
    });
}

void simo_gain_set_free(simo_gain_set* gains) { delete gains; }

simo_status simo_gain_set_get(const simo_gain_set* gains, simo_gain_id which, double* buf, size_t len) {
    return guarded([&] {
        need(gains, "gains");
        const auto& g = gains->gains;
        switch (which) {
            case SIMO_GAIN_K: copy_out(g.K, buf, len); break;
            case SIMO_GAIN_K_REF: copy_out(g.K_ref, buf, len); break;
            case SIMO_GAIN_K_P: copy_out(g.K_p, buf, len); break;
            case SIMO_GAIN_K_D: copy_out(g.K_d, buf, len); break;
            default: simo::fail(simo::ErrorKind::contract, "unknown gain id");
        }
        return SIMO_OK;
    });
}

simo_status simo_gain_set_dims(const simo_gain_set* gains, size_t* n, size_t* q) {
    return guarded([&] {
        need(gains, "gains");
        if (n) *n = static_cast<size_t>(gains->gains.K.size());
        if (q) *q = static_cast<size_t>(gains->gains.output_dim());
        return SIMO_OK;
    });
}

simo_status simo_gain_set_closed_loop(const simo_gain_set* gains, double* re, double* im, size_t len) {
    return guarded([&] {
        need(gains, "gains");
        need(re, "re");
        need(im, "im");
        if (!gains->design) simo::fail(simo::ErrorKind::contract, "gain set was not produced by a design");
        const auto& ev = gains->design->closed_loop_eigenvalues;
        if (len < ev.size()) simo::fail(simo::ErrorKind::contract, "eigenvalue buffers too small");
        for (size_t i = 0; i < ev.size(); ++i) {
            re[i] = ev[i].real();
            im[i] = ev[i].imag();
        }
        return SIMO_OK;
    });
}

simo_status simo_gain_set_care_residual(const simo_gain_set* gains, double* residual) {
    return guarded([&] {
        need(gains, "gains");
        need(residual, "residual");
        if (!gains->design) simo::fail(simo::ErrorKind::contract, "gain set was not produced by a design");
        *residual = gains->design->care.residual;
        return SIMO_OK;
    });
}

/* ---- control laws ---- */

simo_status simo_control_sfr_ffr(const simo_gain_set* gains, const double* x, const double* c_ref, double* u) {
    return guarded([&] {
        need(gains, "gains");
        need(u, "u");
        const auto& g = gains->gains;
        *u = simo::control_sfr_ffr(vec_in(x, static_cast<size_t>(g.K.size())),
                                   vec_in(c_ref, static_cast<size_t>(g.K_ref.size())), g);
        return SIMO_OK;
    });
}

simo_status simo_control_pd(const simo_gain_set* gains, const double* e, const double* e_dot, double* u) {
    return guarded([&] {
        need(gains, "gains");
        need(u, "u");
        const auto& g = gains->gains;
        const auto q = static_cast<size_t>(g.output_dim());
        *u = simo::control_pd_continuous(vec_in(e, q), vec_in(e_dot, q), g);
        return SIMO_OK;
    });
}

/* ---- simulation ---- */

simo_status simo_simulate(const simo_system* plant, const simo_gain_set* gains, const simo_scenario* scenario,
                          simo_trajectory** out) {
    return guarded([&] {
        need(plant, "plant");
        need(gains, "gains");
        need(scenario, "scenario");
        need(out, "out");
        auto* t = new simo_trajectory{simo::simulate(plant->sys, gains->gains, to_scenario(*scenario))};
        *out = t;
        if (t->traj.diverged) {
            g_last_error = t->traj.diagnostic;
            return SIMO_ERR_DIVERGENCE;
        }
        return SIMO_OK;
    });
}

void simo_trajectory_free(simo_trajectory* traj) { delete traj; }

size_t simo_trajectory_length(const simo_trajectory* traj) {
    return traj ? static_cast<size_t>(traj->traj.size()) : 0;
}

simo_status simo_trajectory_signal(const simo_trajectory* traj, simo_signal_id which, size_t column, double* buf,
                                   size_t len) {
    return guarded([&] {
        need(traj, "trajectory");
        const auto& t = traj->traj;
        switch (which) {
            case SIMO_SIGNAL_TIME: copy_out(t.time, buf, len); break;
            case SIMO_SIGNAL_CONTROL: copy_out(t.control, buf, len); break;
            case SIMO_SIGNAL_STATE:
                if (column >= static_cast<size_t>(t.states.cols()))
                    simo::fail(simo::ErrorKind::contract, "state column out of range");
                copy_out(t.states.col(static_cast<Eigen::Index>(column)), buf, len);
                break;
            case SIMO_SIGNAL_REFERENCE:
                if (column >= static_cast<size_t>(t.reference.cols()))
                    simo::fail(simo::ErrorKind::contract, "reference column out of range");
                copy_out(t.reference.col(static_cast<Eigen::Index>(column)), buf, len);
                break;
            default: simo::fail(simo::ErrorKind::contract, "unknown signal id");
        }
        return SIMO_OK;
    });
}

int simo_trajectory_diverged(const simo_trajectory* traj) { return traj && traj->traj.diverged ? 1 : 0; }

const char* simo_trajectory_diagnostic(const simo_trajectory* traj) {
    return traj ? traj->traj.diagnostic.c_str() : "";
}

simo_status simo_trajectory_metrics(const simo_trajectory* traj, double band_x1, double band_x2,
                                    simo_settling_metrics* out) {
    return guarded([&] {
        need(traj, "trajectory");
        need(out, "out");
        if (!(band_x1 > 0) || !(band_x2 > 0)) simo::fail(simo::ErrorKind::contract, "bands must be positive");
        const auto rep = simo::settling_metrics(traj->traj, band_x1, band_x2);
        out->x1_settled = rep.x1_settling ? 1 : 0;
        out->x1_settling_time = rep.x1_settling.value_or(-1.0);
        out->x2_settled = rep.x2_settling ? 1 : 0;
        out->x2_settling_time = rep.x2_settling.value_or(-1.0);
        out->max_abs_u = rep.max_abs_u;
        out->saturation_fraction = rep.saturation_fraction;
        return SIMO_OK;
    });
}

simo_status simo_trajectory_write_csv(const simo_trajectory* traj, const char* path) {
    return guarded([&] {
        need(traj, "trajectory");
        need(path, "path");
        std::ofstream out(path, std::ios::binary);
        if (!out) simo::fail(simo::ErrorKind::io, std::string("cannot write '") + path + "'");
        simo::write_csv(traj->traj, out);
        if (!out) simo::fail(simo::ErrorKind::io, std::string("write failed for '") + path + "'");
        return SIMO_OK;
    });
}

}  // extern "C"
