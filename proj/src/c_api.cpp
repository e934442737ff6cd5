#include "bregenv/bregenv.h"

#include <cmath>
#include <cstring>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "bregenv/asymptotics.hpp"
#include "bregenv/envelope.hpp"
#include "bregenv/error.hpp"
#include "bregenv/projector.hpp"

struct bregenv_kernel {
  bregenv::LegendreKernel k;
};

struct bregenv_objective {
  bregenv::ConvexObjective th;
};

struct bregenv_set {
  bregenv::ProjectionSpec spec;
};

struct bregenv_sweep {
  std::vector<bregenv::SweepRecord> records;
  bregenv::LimitReport report;
};

struct bregenv_trajectory {
  bregenv::ProximalPointResult result;
  std::string certificate;
};

namespace {

thread_local std::string g_last_error;

bregenv_status map_code(bregenv::ErrorCode c) {
  using bregenv::ErrorCode;
  switch (c) {
  case ErrorCode::parameter: return BREGENV_E_PARAMETER;
  case ErrorCode::domain: return BREGENV_E_DOMAIN;
  case ErrorCode::dimension: return BREGENV_E_DIMENSION;
  case ErrorCode::infeasible: return BREGENV_E_INFEASIBLE;
  case ErrorCode::invalid_set: return BREGENV_E_INVALID_SET;
  case ErrorCode::convexity: return BREGENV_E_CONVEXITY;
  case ErrorCode::solver_failure: return BREGENV_E_SOLVER_FAILURE;
  case ErrorCode::not_converged: return BREGENV_E_NOT_CONVERGED;
  case ErrorCode::unbounded: return BREGENV_E_UNBOUNDED;
  case ErrorCode::parse: return BREGENV_E_PARSE;
  case ErrorCode::internal: return BREGENV_E_INTERNAL;
  }
  return BREGENV_E_INTERNAL;
}

bregenv_status fail(bregenv_status s, std::string msg) {
  g_last_error = std::move(msg);
  return s;
}

struct NullArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Runs fn, translating exceptions into status codes.
template <class F>
bregenv_status guarded(F&& fn) {
  try {
    g_last_error.clear();
    fn();
    return BREGENV_OK;
  } catch (const bregenv::Error& e) {
    return fail(map_code(e.code()), e.what());
  } catch (const NullArgument& e) {
    return fail(BREGENV_E_NULL_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(BREGENV_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BREGENV_E_INTERNAL, e.what());
  } catch (...) {
    return fail(BREGENV_E_INTERNAL, "unknown error");
  }
}

bregenv::ProxOptions to_options(const bregenv_options* o) {
  bregenv::ProxOptions p;
  if (o) {
    p.tol = o->tol;
    p.max_iter = o->max_iter;
    p.allow_closed_form = o->allow_closed_form != 0;
  }
  if (!(p.tol > 0.0) || p.max_iter < 1) {
    throw bregenv::Error(bregenv::ErrorCode::parameter, "options need tol > 0 and max_iter >= 1");
  }
  return p;
}

// C callers may pass any int through an enum parameter; reading it as the
// enum type would be undefined in C++ when it is out of range.
template <class E>
int raw(const E& e) {
  static_assert(sizeof(E) == sizeof(int));
  int v = 0;
  std::memcpy(&v, &e, sizeof v);
  return v;
}

bregenv::Side to_side(int s) {
  if (s == BREGENV_LEFT) return bregenv::Side::left;
  if (s == BREGENV_RIGHT) return bregenv::Side::right;
  throw bregenv::Error(bregenv::ErrorCode::parameter, "side must be BREGENV_LEFT or BREGENV_RIGHT");
}

bregenv_branch to_branch(bregenv::ProxBranch b) {
  switch (b) {
  case bregenv::ProxBranch::closed_form: return BREGENV_BRANCH_CLOSED_FORM;
  case bregenv::ProxBranch::bisection: return BREGENV_BRANCH_BISECTION;
  case bregenv::ProxBranch::newton_fallback: return BREGENV_BRANCH_NEWTON;
  }
  return BREGENV_BRANCH_BISECTION;
}

std::span<const double> view(const double* p, std::size_t n) {
  if (!p && n) throw NullArgument("null point with n > 0");
  return {p, n};
}

#define BREGENV_REQUIRE(cond)                                                    \
  do {                                                                          \
    if (!(cond)) return fail(BREGENV_E_NULL_ARGUMENT, "null argument: " #cond); \
  } while (0)

} // namespace

extern "C" {

const char* bregenv_version(void) { return "1.0.0"; }

const char* bregenv_status_string(bregenv_status status) {
  switch (raw(status)) {
  case BREGENV_OK: return "ok";
  case BREGENV_E_PARAMETER: return "parameter";
  case BREGENV_E_DOMAIN: return "domain";
  case BREGENV_E_DIMENSION: return "dimension";
  case BREGENV_E_INFEASIBLE: return "infeasible";
  case BREGENV_E_INVALID_SET: return "invalid_set";
  case BREGENV_E_CONVEXITY: return "convexity";
  case BREGENV_E_SOLVER_FAILURE: return "solver_failure";
  case BREGENV_E_NOT_CONVERGED: return "not_converged";
  case BREGENV_E_UNBOUNDED: return "unbounded";
  case BREGENV_E_PARSE: return "parse";
  case BREGENV_E_INTERNAL: return "internal";
  case BREGENV_E_NULL_ARGUMENT: return "null_argument";
  }
  return "unknown";
}

const char* bregenv_last_error(void) { return g_last_error.c_str(); }

const char* bregenv_branch_string(bregenv_branch branch) {
  switch (raw(branch)) {
  case BREGENV_BRANCH_CLOSED_FORM: return "closed_form";
  case BREGENV_BRANCH_BISECTION: return "bisection";
  case BREGENV_BRANCH_NEWTON: return "newton_fallback";
  }
  return "unknown";
}

const char* bregenv_reason_string(bregenv_reason reason) {
  switch (raw(reason)) {
  case BREGENV_REASON_NONE: return "";
  case BREGENV_REASON_OUTSIDE_DOMAIN: return "outside_domain";
  case BREGENV_REASON_BOUNDARY: return "boundary_no_gradient";
  }
  return "unknown";
}

void bregenv_default_options(bregenv_options* opts) {
  if (!opts) return;
  const bregenv::ProxOptions d;
  opts->tol = d.tol;
  opts->max_iter = d.max_iter;
  opts->allow_closed_form = d.allow_closed_form ? 1 : 0;
}

bregenv_status bregenv_kernel_create(const char* name, bregenv_kernel** out) {
  BREGENV_REQUIRE(name && out);
  *out = nullptr;
  return guarded([&] { *out = new bregenv_kernel{bregenv::kernel_by_name(name)}; });
}

void bregenv_kernel_destroy(bregenv_kernel* k) { delete k; }

const char* bregenv_kernel_name(const bregenv_kernel* k) { return k ? k->k.name().c_str() : ""; }

int bregenv_kernel_in_interior(const bregenv_kernel* k, const double* x, size_t n) {
  if (!k || (!x && n)) return 0;
  return k->k.in_interior(std::span<const double>(x, n)) ? 1 : 0;
}

int bregenv_kernel_in_domain(const bregenv_kernel* k, const double* x, size_t n) {
  if (!k || (!x && n)) return 0;
  return k->k.in_domain(std::span<const double>(x, n)) ? 1 : 0;
}

bregenv_status bregenv_kernel_eval(const bregenv_kernel* k, double t, double* value, double* grad,
                                   double* hess) {
  BREGENV_REQUIRE(k);
  return guarded([&] {
    if (value) *value = k->k.value(t);
    if (grad) *grad = k->k.grad(t);
    if (hess) *hess = k->k.hess(t);
  });
}

bregenv_status bregenv_bregman_distance(const bregenv_kernel* k, const double* x, const double* y,
                                        size_t n, double* out) {
  BREGENV_REQUIRE(k && out);
  return guarded([&] { *out = bregenv::bregman_distance(k->k, view(x, n), view(y, n)); });
}

bregenv_status bregenv_objective_parse(const char* spec, bregenv_objective** out) {
  BREGENV_REQUIRE(spec && out);
  *out = nullptr;
  return guarded([&] { *out = new bregenv_objective{bregenv::parse_objective(spec)}; });
}

void bregenv_objective_destroy(bregenv_objective* th) { delete th; }

bregenv_status bregenv_objective_value(const bregenv_objective* th, const double* x, size_t n,
                                       double* out) {
  BREGENV_REQUIRE(th && out);
  return guarded([&] {
    th->th.check_dimension(n);
    *out = th->th.value(view(x, n));
  });
}

bregenv_status bregenv_set_parse(const char* spec, bregenv_set** out) {
  BREGENV_REQUIRE(spec && out);
  *out = nullptr;
  return guarded([&] { *out = new bregenv_set{bregenv::parse_set(spec)}; });
}

void bregenv_set_destroy(bregenv_set* set) { delete set; }

size_t bregenv_set_dimension(const bregenv_set* set) { return set ? set->spec.dimension() : 0; }

bregenv_status bregenv_prox(const bregenv_kernel* k, const bregenv_objective* th,
                            bregenv_side side, double gamma, const double* point, size_t n,
                            const bregenv_options* opts, double* prox_out,
                            bregenv_prox_info* info) {
  BREGENV_REQUIRE(k && th && prox_out);
  return guarded([&] {
    const bregenv::ProxOutcome r =
        bregenv::prox(to_side(raw(side)), k->k, th->th, gamma, view(point, n), to_options(opts));
    for (size_t j = 0; j < n; ++j) prox_out[j] = r.point[j];
    if (info) {
      info->envelope_value = r.envelope_value;
      info->residual = r.residual;
      info->iterations = r.iterations;
      info->branch = to_branch(r.branch);
    }
  });
}

bregenv_status bregenv_envelope(const bregenv_kernel* k, const bregenv_objective* th,
                                bregenv_side side, double gamma, const double* point, size_t n,
                                const bregenv_options* opts, double* prox_out,
                                double* gradient_out, bregenv_envelope_info* info) {
  BREGENV_REQUIRE(k && th && info);
  return guarded([&] {
    const bregenv::EnvelopeSample s =
        bregenv::envelope(to_side(raw(side)), k->k, th->th, gamma, view(point, n),
                          gradient_out != nullptr, to_options(opts));
    info->value = s.value;
    info->residual = s.residual;
    info->iterations = s.iterations;
    info->branch = to_branch(s.branch);
    info->has_prox = 0;
    info->has_gradient = 0;
    if (!std::isfinite(s.value)) info->reason = BREGENV_REASON_OUTSIDE_DOMAIN;
    else if (!s.note.empty()) info->reason = BREGENV_REASON_BOUNDARY;
    else info->reason = BREGENV_REASON_NONE;
    if (prox_out && s.prox_point.size() == n) {
      for (size_t j = 0; j < n; ++j) prox_out[j] = s.prox_point[j];
      info->has_prox = 1;
    }
    if (gradient_out && s.gradient) {
      for (size_t j = 0; j < n; ++j) gradient_out[j] = (*s.gradient)[j];
      info->has_gradient = 1;
    }
  });
}

bregenv_status bregenv_project(const bregenv_kernel* k, const bregenv_set* set,
                               bregenv_projection mode, const double* point, size_t n, double tol,
                               double* out) {
  BREGENV_REQUIRE(set && out);
  return guarded([&] {
    const auto x = view(point, n);
    std::vector<double> p;
    switch (raw(mode)) {
    case BREGENV_PROJECT_LEFT:
      if (!k) throw bregenv::Error(bregenv::ErrorCode::parameter, "left projection needs a kernel");
      p = bregenv::left_project(k->k, set->spec, x, tol);
      break;
    case BREGENV_PROJECT_RIGHT:
      if (!k) throw bregenv::Error(bregenv::ErrorCode::parameter, "right projection needs a kernel");
      p = bregenv::right_project(k->k, set->spec, x, tol);
      break;
    case BREGENV_PROJECT_ORTHOGONAL:
      p = bregenv::orthogonal_project(set->spec, x);
      break;
    default:
      throw bregenv::Error(bregenv::ErrorCode::parameter, "unknown projection mode");
    }
    for (size_t j = 0; j < n; ++j) out[j] = p[j];
  });
}

bregenv_status bregenv_log_gamma_grid(double lo, double hi, size_t n, double* out) {
  BREGENV_REQUIRE(out);
  return guarded([&] {
    const auto g = bregenv::log_gamma_grid(lo, hi, static_cast<int>(n));
    for (size_t i = 0; i < n; ++i) out[i] = g[i];
  });
}

bregenv_status bregenv_sweep_run(const bregenv_kernel* k, const bregenv_objective* th,
                                 bregenv_side side, const double* point, size_t n,
                                 const double* gammas, size_t m, const bregenv_options* opts,
                                 bregenv_sweep** out) {
  BREGENV_REQUIRE(k && th && out);
  *out = nullptr;
  return guarded([&] {
    auto s = std::make_unique<bregenv_sweep>();
    s->records = bregenv::gamma_sweep(k->k, th->th, view(point, n), to_side(raw(side)),
                                      view(gammas, m), to_options(opts));
    s->report = bregenv::limit_report(k->k, th->th, s->records);
    *out = s.release();
  });
}

void bregenv_sweep_destroy(bregenv_sweep* s) { delete s; }

size_t bregenv_sweep_size(const bregenv_sweep* s) { return s ? s->records.size() : 0; }

bregenv_status bregenv_sweep_record(const bregenv_sweep* s, size_t i, bregenv_sweep_row* row,
                                    double* prox_out) {
  BREGENV_REQUIRE(s && row);
  if (i >= s->records.size()) return fail(BREGENV_E_PARAMETER, "record index out of range");
  const bregenv::SweepRecord& r = s->records[i];
  row->gamma = r.gamma;
  row->theta_at_prox = r.theta_at_prox;
  row->bregman_term = r.bregman_term;
  row->scaled_term = r.scaled_term;
  row->envelope = r.envelope;
  row->residual = r.residual;
  row->iterations = r.iterations;
  row->branch = to_branch(r.branch);
  if (prox_out) {
    for (size_t j = 0; j < r.prox_point.size(); ++j) prox_out[j] = r.prox_point[j];
  }
  return BREGENV_OK;
}

size_t bregenv_sweep_check_count(const bregenv_sweep* s) {
  return s ? s->report.checks.size() : 0;
}

bregenv_status bregenv_sweep_check(const bregenv_sweep* s, size_t i, bregenv_limit_check* out) {
  BREGENV_REQUIRE(s && out);
  if (i >= s->report.checks.size()) return fail(BREGENV_E_PARAMETER, "check index out of range");
  const bregenv::LimitCheck& c = s->report.checks[i];
  out->name = c.name.c_str();
  out->property = c.property ? 1 : 0;
  out->passed = c.passed ? 1 : 0;
  out->available = c.available ? 1 : 0;
  out->gap = c.gap;
  out->tolerance = c.tolerance;
  out->trend_decreasing = c.trend_decreasing ? 1 : 0;
  return BREGENV_OK;
}

int bregenv_sweep_properties_hold(const bregenv_sweep* s) {
  return s && s->report.properties_hold ? 1 : 0;
}

bregenv_status bregenv_proximal_point(const bregenv_kernel* k, const bregenv_objective* th,
                                      double gamma, const double* x0, size_t n, int max_iter,
                                      double tol, const bregenv_options* opts,
                                      bregenv_trajectory** out) {
  BREGENV_REQUIRE(k && th && out);
  *out = nullptr;
  return guarded([&] {
    auto t = std::make_unique<bregenv_trajectory>();
    t->result = bregenv::proximal_point_solve(k->k, th->th, gamma, view(x0, n), max_iter, tol,
                                              to_options(opts));
    t->certificate = t->result.certificate.describe();
    *out = t.release();
  });
}

void bregenv_trajectory_destroy(bregenv_trajectory* t) { delete t; }

size_t bregenv_trajectory_length(const bregenv_trajectory* t) {
  return t ? t->result.trajectory.size() : 0;
}

size_t bregenv_trajectory_dimension(const bregenv_trajectory* t) {
  return t ? t->result.point.size() : 0;
}

bregenv_status bregenv_trajectory_point(const bregenv_trajectory* t, size_t i, double* out) {
  BREGENV_REQUIRE(t && out);
  if (i >= t->result.trajectory.size()) return fail(BREGENV_E_PARAMETER, "index out of range");
  const auto& p = t->result.trajectory[i];
  for (size_t j = 0; j < p.size(); ++j) out[j] = p[j];
  return BREGENV_OK;
}

int bregenv_trajectory_converged(const bregenv_trajectory* t) {
  return t && t->result.converged ? 1 : 0;
}

double bregenv_trajectory_step_residual(const bregenv_trajectory* t) {
  return t ? t->result.step_residual : std::nan("");
}

const char* bregenv_trajectory_certificate(const bregenv_trajectory* t) {
  return t ? t->certificate.c_str() : "";
}

} // extern "C"
