#ifndef BREGENV_H
#define BREGENV_H

/* C interface to the bregenv library. All handles are opaque and immutable
 * once created, so they may be shared across threads. Functions return a
 * status code; on failure bregenv_last_error() describes the problem for the
 * calling thread. */

#include <stddef.h>

#if defined(_WIN32)
#if defined(BREGENV_BUILDING)
#define BREGENV_API __declspec(dllexport)
#else
#define BREGENV_API __declspec(dllimport)
#endif
#else
#define BREGENV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bregenv_status {
  BREGENV_OK = 0,
  BREGENV_E_PARAMETER = 1,
  BREGENV_E_DOMAIN = 2,
  BREGENV_E_DIMENSION = 3,
  BREGENV_E_INFEASIBLE = 4,
  BREGENV_E_INVALID_SET = 5,
  BREGENV_E_CONVEXITY = 6,
  BREGENV_E_SOLVER_FAILURE = 7,
  BREGENV_E_NOT_CONVERGED = 8,
  BREGENV_E_UNBOUNDED = 9,
  BREGENV_E_PARSE = 10,
  BREGENV_E_INTERNAL = 11,
  BREGENV_E_NULL_ARGUMENT = 12
} bregenv_status;

typedef enum bregenv_side { BREGENV_LEFT = 0, BREGENV_RIGHT = 1 } bregenv_side;

typedef enum bregenv_branch {
  BREGENV_BRANCH_CLOSED_FORM = 0,
  BREGENV_BRANCH_BISECTION = 1,
  BREGENV_BRANCH_NEWTON = 2
} bregenv_branch;

typedef enum bregenv_projection {
  BREGENV_PROJECT_LEFT = 0,
  BREGENV_PROJECT_RIGHT = 1,
  BREGENV_PROJECT_ORTHOGONAL = 2
} bregenv_projection;

/* Why an envelope value is +inf or has no gradient. */
typedef enum bregenv_reason {
  BREGENV_REASON_NONE = 0,
  BREGENV_REASON_OUTSIDE_DOMAIN = 1,
  BREGENV_REASON_BOUNDARY = 2
} bregenv_reason;

typedef struct bregenv_kernel bregenv_kernel;
typedef struct bregenv_objective bregenv_objective;
typedef struct bregenv_set bregenv_set;
typedef struct bregenv_sweep bregenv_sweep;
typedef struct bregenv_trajectory bregenv_trajectory;

typedef struct bregenv_options {
  double tol;            /* residual tolerance, default 1e-10 */
  int max_iter;          /* per-coordinate solver steps, default 200 */
  int allow_closed_form; /* nonzero: use closed forms when available */
} bregenv_options;

typedef struct bregenv_prox_info {
  double envelope_value;
  double residual;
  int iterations;
  bregenv_branch branch;
} bregenv_prox_info;

typedef struct bregenv_envelope_info {
  double value;      /* +inf outside the envelope's domain */
  int has_prox;      /* prox_out was written */
  int has_gradient;  /* gradient_out was written */
  double residual;
  int iterations;
  bregenv_branch branch;
  bregenv_reason reason;
} bregenv_envelope_info;

typedef struct bregenv_sweep_row {
  double gamma;
  double theta_at_prox;
  double bregman_term;
  double scaled_term;
  double envelope;
  double residual;
  int iterations;
  bregenv_branch branch;
} bregenv_sweep_row;

typedef struct bregenv_limit_check {
  const char* name; /* owned by the sweep handle */
  int property;     /* 1: monotonicity property, 0: limit diagnostic */
  int passed;
  int available;
  double gap;
  double tolerance;
  int trend_decreasing;
} bregenv_limit_check;

BREGENV_API const char* bregenv_version(void);
BREGENV_API const char* bregenv_status_string(bregenv_status status);
BREGENV_API const char* bregenv_last_error(void);
BREGENV_API const char* bregenv_branch_string(bregenv_branch branch);
BREGENV_API const char* bregenv_reason_string(bregenv_reason reason);
BREGENV_API void bregenv_default_options(bregenv_options* opts);

/* Kernels: "energy", "bs", "fd" (long names accepted). */
BREGENV_API bregenv_status bregenv_kernel_create(const char* name, bregenv_kernel** out);
BREGENV_API void bregenv_kernel_destroy(bregenv_kernel* k);
BREGENV_API const char* bregenv_kernel_name(const bregenv_kernel* k);
BREGENV_API int bregenv_kernel_in_interior(const bregenv_kernel* k, const double* x, size_t n);
BREGENV_API int bregenv_kernel_in_domain(const bregenv_kernel* k, const double* x, size_t n);
/* Any of value/grad/hess may be NULL. */
BREGENV_API bregenv_status bregenv_kernel_eval(const bregenv_kernel* k, double t, double* value,
                                               double* grad, double* hess);
BREGENV_API bregenv_status bregenv_bregman_distance(const bregenv_kernel* k, const double* x,
                                                    const double* y, size_t n, double* out);

/* Objectives: "abs:<c>", "ind:<a>,<b>", "quad:<a>,<c>", comma/semicolon joined. */
BREGENV_API bregenv_status bregenv_objective_parse(const char* spec, bregenv_objective** out);
BREGENV_API void bregenv_objective_destroy(bregenv_objective* th);
BREGENV_API bregenv_status bregenv_objective_value(const bregenv_objective* th, const double* x,
                                                   size_t n, double* out);

/* Sets: "box:<lo>,<hi>;..." or "hyp:<a1>,<a2>,...=<b>". */
BREGENV_API bregenv_status bregenv_set_parse(const char* spec, bregenv_set** out);
BREGENV_API void bregenv_set_destroy(bregenv_set* set);
BREGENV_API size_t bregenv_set_dimension(const bregenv_set* set);

/* opts may be NULL (defaults); info may be NULL. prox_out holds n values. */
BREGENV_API bregenv_status bregenv_prox(const bregenv_kernel* k, const bregenv_objective* th,
                                        bregenv_side side, double gamma, const double* point,
                                        size_t n, const bregenv_options* opts, double* prox_out,
                                        bregenv_prox_info* info);

/* prox_out and gradient_out (n values each) may be NULL. */
BREGENV_API bregenv_status bregenv_envelope(const bregenv_kernel* k, const bregenv_objective* th,
                                            bregenv_side side, double gamma,
                                            const double* point, size_t n,
                                            const bregenv_options* opts, double* prox_out,
                                            double* gradient_out, bregenv_envelope_info* info);

BREGENV_API bregenv_status bregenv_project(const bregenv_kernel* k, const bregenv_set* set,
                                           bregenv_projection mode, const double* point,
                                           size_t n, double tol, double* out);

/* Fills out[0..n-1] with n log-spaced values from lo to hi. */
BREGENV_API bregenv_status bregenv_log_gamma_grid(double lo, double hi, size_t n, double* out);

BREGENV_API bregenv_status bregenv_sweep_run(const bregenv_kernel* k, const bregenv_objective* th,
                                             bregenv_side side, const double* point, size_t n,
                                             const double* gammas, size_t m,
                                             const bregenv_options* opts, bregenv_sweep** out);
BREGENV_API void bregenv_sweep_destroy(bregenv_sweep* s);
BREGENV_API size_t bregenv_sweep_size(const bregenv_sweep* s);
/* prox_out (dimension values) may be NULL. */
BREGENV_API bregenv_status bregenv_sweep_record(const bregenv_sweep* s, size_t i,
                                                bregenv_sweep_row* row, double* prox_out);
BREGENV_API size_t bregenv_sweep_check_count(const bregenv_sweep* s);
BREGENV_API bregenv_status bregenv_sweep_check(const bregenv_sweep* s, size_t i,
                                               bregenv_limit_check* out);
BREGENV_API int bregenv_sweep_properties_hold(const bregenv_sweep* s);

/* Proximal-point iteration of the left prox. A run that hits max_iter still
 * returns BREGENV_OK; query bregenv_trajectory_converged. */
BREGENV_API bregenv_status bregenv_proximal_point(const bregenv_kernel* k,
                                                  const bregenv_objective* th, double gamma,
                                                  const double* x0, size_t n, int max_iter,
                                                  double tol, const bregenv_options* opts,
                                                  bregenv_trajectory** out);
BREGENV_API void bregenv_trajectory_destroy(bregenv_trajectory* t);
BREGENV_API size_t bregenv_trajectory_length(const bregenv_trajectory* t);
BREGENV_API size_t bregenv_trajectory_dimension(const bregenv_trajectory* t);
BREGENV_API bregenv_status bregenv_trajectory_point(const bregenv_trajectory* t, size_t i,
                                                    double* out);
BREGENV_API int bregenv_trajectory_converged(const bregenv_trajectory* t);
BREGENV_API double bregenv_trajectory_step_residual(const bregenv_trajectory* t);
/* Conditions that certify coercivity, e.g. "b,c" or "unknown"; owned by the handle. */
BREGENV_API const char* bregenv_trajectory_certificate(const bregenv_trajectory* t);

#ifdef __cplusplus
}
#endif

#endif
