/* C interface to the SIMO linearization / LQR-to-PD / simulation library.
 *
 * Every object is an opaque handle created by a simo_*_create / simo_*_load /
 * producing call and released with the matching simo_*_free. Functions return
 * a simo_status; on failure the message is available from
 * simo_last_error_message() on the calling thread until the next call.
 *
 * Matrices cross the boundary row-major. Buffers are caller-owned; a getter
 * that receives too small a buffer fails with SIMO_ERR_CONTRACT. */
#ifndef SIMO_LQR_H
#define SIMO_LQR_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(SIMO_BUILDING_LIBRARY)
#    define SIMO_API __declspec(dllexport)
#  else
#    define SIMO_API __declspec(dllimport)
#  endif
#else
#  define SIMO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum simo_status {
    SIMO_OK = 0,
    SIMO_ERR_CONTRACT = 1,
    SIMO_ERR_CONFIG = 2,
    SIMO_ERR_DESIGN = 3,
    SIMO_ERR_DIVERGENCE = 4,
    SIMO_ERR_NUMERICAL = 5,
    SIMO_ERR_IO = 6,
    SIMO_ERR_INTERNAL = 7
} simo_status;

typedef struct simo_project simo_project;
typedef struct simo_system simo_system;
typedef struct simo_linear_model simo_linear_model;
typedef struct simo_gain_set simo_gain_set;
typedef struct simo_trajectory simo_trajectory;

typedef enum simo_angle_unit { SIMO_ANGLE_DEGREES = 0, SIMO_ANGLE_RADIANS = 1 } simo_angle_unit;

typedef struct simo_robot_params {
    double I_n, I_k, m_n, m_k, l, R, r, k, k_e, k_m, g;
    simo_angle_unit angle_unit;
} simo_robot_params;

typedef enum simo_controller {
    SIMO_SFR_CONTINUOUS = 0,
    SIMO_PD_CONTINUOUS = 1,
    SIMO_PD_DISCRETE = 2,
    SIMO_SFR_DISCRETE = 3
} simo_controller;

/* Initial state and reference are in display units (degrees for the robot
 * tilt). reference may be NULL for a zero reference. saturate: -1 selects the
 * default (on for sampled controllers only), 0 off, 1 on. */
typedef struct simo_scenario {
    const char* name;
    simo_controller controller;
    const double* initial_state;
    size_t initial_state_len;
    const double* reference;
    size_t reference_len;
    double duration;
    double step;
    double sample_time;
    double filter_n;
    int saturate;
    double u_min;
    double u_max;
} simo_scenario;

typedef struct simo_project_info {
    size_t state_dim;
    size_t output_dim;
    size_t scenario_count;
    int weights_defaulted;
    int scenarios_defaulted;
    int has_equilibrium;
} simo_project_info;

typedef struct simo_controllability_info {
    int rank;
    double determinant;
    int controllable;
    double sigma_max;
    double sigma_min;
} simo_controllability_info;

typedef struct simo_settling_metrics {
    int x1_settled;
    double x1_settling_time;
    int x2_settled;
    double x2_settling_time;
    double max_abs_u;
    double saturation_fraction;
} simo_settling_metrics;

typedef enum simo_matrix_id {
    SIMO_MATRIX_A = 0,
    SIMO_MATRIX_B = 1,
    SIMO_MATRIX_E = 2,
    SIMO_VECTOR_EQUILIBRIUM = 3,
    SIMO_VECTOR_EPSILON = 4
} simo_matrix_id;

typedef enum simo_gain_id {
    SIMO_GAIN_K = 0,
    SIMO_GAIN_K_REF = 1,
    SIMO_GAIN_K_P = 2,
    SIMO_GAIN_K_D = 3
} simo_gain_id;

typedef enum simo_signal_id {
    SIMO_SIGNAL_TIME = 0,
    SIMO_SIGNAL_CONTROL = 1,
    SIMO_SIGNAL_STATE = 2,     /* column selects the state index (internal units) */
    SIMO_SIGNAL_REFERENCE = 3  /* column selects the output index (internal units) */
} simo_signal_id;

/* ---- diagnostics ---- */
SIMO_API const char* simo_last_error_message(void);
SIMO_API const char* simo_status_string(simo_status status);
SIMO_API const char* simo_version(void);
SIMO_API void simo_string_free(char* s);

/* ---- project configuration ---- */
SIMO_API simo_status simo_project_default(simo_project** out);
SIMO_API simo_status simo_project_load(const char* path, simo_project** out);
SIMO_API void simo_project_free(simo_project* project);
SIMO_API simo_status simo_project_info_get(const simo_project* project, simo_project_info* out);
SIMO_API simo_status simo_project_plant(const simo_project* project, simo_system** out);
SIMO_API simo_status simo_project_equilibrium(const simo_project* project, double* buf, size_t len);
SIMO_API simo_status simo_project_set_equilibrium(simo_project* project, const double* x_e, size_t len);
SIMO_API simo_status simo_project_epsilon(const simo_project* project, double* buf, size_t len, int* is_set);
SIMO_API simo_status simo_project_weights(const simo_project* project, double* q_diag, size_t len, double* r);
SIMO_API simo_status simo_project_set_weights(simo_project* project, const double* q_diag, size_t len, double r);
/* Overrides applied to every scenario; pass a value <= 0 to leave unchanged. */
SIMO_API simo_status simo_project_override_timing(simo_project* project, double duration, double step,
                                                  double sample_time, double filter_n);
/* name is owned by the project and valid until it is freed or modified. */
SIMO_API simo_status simo_project_scenario(const simo_project* project, size_t index, simo_scenario* out);
/* Returns NULL when the config names no output directory. */
SIMO_API const char* simo_project_output_dir(const simo_project* project);

/* ---- plants ---- */
SIMO_API void simo_robot_default_params(simo_robot_params* out);
SIMO_API simo_status simo_robot_create(const simo_robot_params* params, simo_system** out);
SIMO_API simo_status simo_linear_system_create(size_t n, size_t q, const double* A, const double* B,
                                               int mechanical, simo_system** out);
SIMO_API void simo_system_free(simo_system* sys);
SIMO_API simo_status simo_system_dims(const simo_system* sys, size_t* n, size_t* q);
SIMO_API simo_status simo_system_evaluate(const simo_system* sys, const double* x, double u, double* xdot);
/* numeric != 0 forces central differences even when an analytic Jacobian exists. */
SIMO_API simo_status simo_system_jacobian(const simo_system* sys, const double* x, int numeric, double* J);

/* ---- linearization ---- */
/* x_e == NULL means the origin; epsilon == NULL means 1e-4 * ones. */
SIMO_API simo_status simo_linearize(const simo_system* sys, const double* x_e, const double* epsilon,
                                    simo_linear_model** out);
SIMO_API void simo_linear_model_free(simo_linear_model* model);
SIMO_API simo_status simo_linear_model_dims(const simo_linear_model* model, size_t* n, size_t* q);
SIMO_API simo_status simo_linear_model_get(const simo_linear_model* model, simo_matrix_id which, double* buf,
                                           size_t len);
SIMO_API int simo_linear_model_epsilon_applied(const simo_linear_model* model);
SIMO_API size_t simo_linear_model_warning_count(const simo_linear_model* model);
SIMO_API const char* simo_linear_model_warning(const simo_linear_model* model, size_t index);
SIMO_API simo_status simo_controllability(const simo_linear_model* model, simo_controllability_info* out);
/* JSON text, release with simo_string_free. */
SIMO_API simo_status simo_linear_model_to_json(const simo_linear_model* model, char** out);
SIMO_API simo_status simo_linear_model_from_json(const char* text, simo_linear_model** out);

/* ---- LQR design ---- */
/* q_diag == NULL uses diag(100,..,100,1,..,1) and r <= 0 uses R = 1. */
SIMO_API simo_status simo_design(const simo_linear_model* model, const double* q_diag, size_t len, double r,
                                 simo_gain_set** out);
SIMO_API simo_status simo_gain_set_from_k(const double* K, size_t n, size_t q, simo_gain_set** out);
SIMO_API void simo_gain_set_free(simo_gain_set* gains);
SIMO_API simo_status simo_gain_set_get(const simo_gain_set* gains, simo_gain_id which, double* buf, size_t len);
SIMO_API simo_status simo_gain_set_dims(const simo_gain_set* gains, size_t* n, size_t* q);
/* Only for gain sets produced by simo_design; re/im have room for n values. */
SIMO_API simo_status simo_gain_set_closed_loop(const simo_gain_set* gains, double* re, double* im, size_t len);
SIMO_API simo_status simo_gain_set_care_residual(const simo_gain_set* gains, double* residual);

/* ---- control laws ---- */
SIMO_API simo_status simo_control_sfr_ffr(const simo_gain_set* gains, const double* x, const double* c_ref,
                                          double* u);
SIMO_API simo_status simo_control_pd(const simo_gain_set* gains, const double* e, const double* e_dot,
                                     double* u);

/* ---- simulation ---- */
/* On divergence returns SIMO_ERR_DIVERGENCE and still hands back the partial
 * trajectory in *out. */
SIMO_API simo_status simo_simulate(const simo_system* plant, const simo_gain_set* gains,
                                   const simo_scenario* scenario, simo_trajectory** out);
SIMO_API void simo_trajectory_free(simo_trajectory* traj);
SIMO_API size_t simo_trajectory_length(const simo_trajectory* traj);
SIMO_API simo_status simo_trajectory_signal(const simo_trajectory* traj, simo_signal_id which, size_t column,
                                            double* buf, size_t len);
SIMO_API int simo_trajectory_diverged(const simo_trajectory* traj);
SIMO_API const char* simo_trajectory_diagnostic(const simo_trajectory* traj);
/* Bands are in display units (e.g. 0.1 deg, 0.001 m). */
SIMO_API simo_status simo_trajectory_metrics(const simo_trajectory* traj, double band_x1, double band_x2,
                                             simo_settling_metrics* out);
SIMO_API simo_status simo_trajectory_write_csv(const simo_trajectory* traj, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* SIMO_LQR_H */
