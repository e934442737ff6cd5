#include "bregenv/projector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "bregenv/error.hpp"
#include "bregenv/prox.hpp"
#include "monotone_solver.hpp"
#include "parse_util.hpp"

namespace bregenv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void check_size(const ProjectionSpec& spec, std::size_t n) {
  if (n == 0 || spec.dimension() != n) {
    throw Error(ErrorCode::dimension, "set has dimension " + std::to_string(spec.dimension()) +
                                          ", point has " + std::to_string(n));
  }
}

void check_interior(const LegendreKernel& k, std::span<const double> x) {
  if (!k.in_interior(x)) throw Error(ErrorCode::domain, "point is outside U of " + k.name());
}

ConvexObjective box_indicator(const ProjectionSpec& spec) {
  std::vector<ScalarObjective> pieces;
  for (std::size_t j = 0; j < spec.lower.size(); ++j) {
    pieces.push_back(objective_indicator_interval(spec.lower[j], spec.upper[j]));
  }
  return ConvexObjective(std::move(pieces));
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

// Solves the scalar dual equation; the residual must be nondecreasing in
// lambda. Failure to bracket means no point of the hyperplane lies in U.
double solve_dual(detail::InclusionProblem prob, double tol) {
  prob.lower = -kInf;
  prob.upper = kInf;
  prob.start = 0.0;
  try {
    return detail::solve_inclusion(prob, tol, 400).t;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::solver_failure) {
      throw Error(ErrorCode::infeasible, "hyperplane does not meet U");
    }
    throw;
  }
}

std::vector<double> finish(const LegendreKernel& k, std::vector<double> p) {
  if (!k.in_interior(p)) {
    throw Error(ErrorCode::infeasible, "projection lands on the boundary of U");
  }
  return p;
}

} // namespace

void ProjectionSpec::validate() const {
  if (kind == SetKind::box) {
    if (lower.size() != upper.size() || lower.empty()) {
      throw Error(ErrorCode::invalid_set, "box needs matching nonempty bounds");
    }
    for (std::size_t j = 0; j < lower.size(); ++j) {
      if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j]) {
        throw Error(ErrorCode::invalid_set, "box bound " + std::to_string(j) + " has lo > hi");
      }
    }
    return;
  }
  if (normal.empty() || !std::isfinite(offset)) {
    throw Error(ErrorCode::invalid_set, "hyperplane needs a normal and a finite offset");
  }
  bool nonzero = false;
  for (double a : normal) {
    if (!std::isfinite(a)) throw Error(ErrorCode::invalid_set, "hyperplane normal not finite");
    nonzero = nonzero || a != 0.0;
  }
  if (!nonzero) throw Error(ErrorCode::invalid_set, "hyperplane normal is zero");
}

bool ProjectionSpec::contains(std::span<const double> x, double tol) const {
  if (x.size() != dimension()) return false;
  if (kind == SetKind::box) {
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j] < lower[j] - tol || x[j] > upper[j] + tol) return false;
    }
    return true;
  }
  return std::abs(dot(normal, x) - offset) <= tol;
}

std::string ProjectionSpec::describe() const {
  std::string s;
  if (kind == SetKind::box) {
    s = "box:";
    for (std::size_t j = 0; j < lower.size(); ++j) {
      if (j) s += ';';
      s += fmt(lower[j]) + "," + fmt(upper[j]);
    }
    return s;
  }
  s = "hyp:";
  for (std::size_t j = 0; j < normal.size(); ++j) {
    if (j) s += ',';
    s += fmt(normal[j]);
  }
  return s + "=" + fmt(offset);
}

ProjectionSpec make_box(std::vector<double> lower, std::vector<double> upper) {
  ProjectionSpec s;
  s.kind = SetKind::box;
  s.lower = std::move(lower);
  s.upper = std::move(upper);
  s.validate();
  return s;
}

ProjectionSpec make_hyperplane(std::vector<double> normal, double offset) {
  ProjectionSpec s;
  s.kind = SetKind::hyperplane;
  s.normal = std::move(normal);
  s.offset = offset;
  s.validate();
  return s;
}

ProjectionSpec parse_set(const std::string& text) {
  const std::string t = detail::trim(text);
  const auto colon = t.find(':');
  if (colon == std::string::npos) throw Error(ErrorCode::parse, "set must be box:... or hyp:...");
  const std::string kind = detail::trim(t.substr(0, colon));
  const std::string body = t.substr(colon + 1);
  if (kind == "box") {
    std::vector<double> lo, hi;
    for (const std::string& pair : detail::split_any(body, ";")) {
      const auto parts = detail::split_any(pair, ",");
      if (parts.size() != 2) throw Error(ErrorCode::parse, "box interval needs lo,hi: '" + pair + "'");
      lo.push_back(detail::parse_double(parts[0]));
      hi.push_back(detail::parse_double(parts[1]));
    }
    return make_box(std::move(lo), std::move(hi));
  }
  if (kind == "hyp") {
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::parse, "hyperplane needs '=<b>'");
    std::vector<double> a;
    for (const std::string& tok : detail::split_any(body.substr(0, eq), ",")) {
      a.push_back(detail::parse_double(tok));
    }
    return make_hyperplane(std::move(a), detail::parse_double(body.substr(eq + 1)));
  }
  throw Error(ErrorCode::parse, "unknown set kind '" + kind + "' (expected box|hyp)");
}

std::vector<double> left_project(const LegendreKernel& k, const ProjectionSpec& spec,
                                 std::span<const double> y, double tol) {
  spec.validate();
  check_size(spec, y.size());
  check_interior(k, y);
  if (spec.kind == SetKind::box) {
    ProxOptions opts;
    opts.tol = tol;
    return left_prox(k, box_indicator(spec), 1.0, y, opts).point;
  }

  // x(lambda) = grad f*(grad f(y) - lambda a); <a, x(lambda)> is nonincreasing.
  const std::size_t n = y.size();
  const auto& a = spec.normal;
  std::vector<double> gy(n);
  for (std::size_t j = 0; j < n; ++j) gy[j] = k.grad(y[j]);
  auto point_at = [&](double lambda) {
    std::vector<double> x(n);
    for (std::size_t j = 0; j < n; ++j) x[j] = k.conj_grad(gy[j] - lambda * a[j]);
    return x;
  };
  detail::InclusionProblem prob;
  prob.residual = [&](double lambda) -> Interval {
    const double r = spec.offset - dot(a, point_at(lambda));
    return {r, r};
  };
  prob.slope = [&](double lambda) {
    const std::vector<double> x = point_at(lambda);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (!k.in_interior(x[j])) return std::nan("");
      s += a[j] * a[j] / k.hess(x[j]);
    }
    return s;
  };
  return finish(k, point_at(solve_dual(prob, tol)));
}

std::vector<double> right_project(const LegendreKernel& k, const ProjectionSpec& spec,
                                  std::span<const double> x, double tol) {
  spec.validate();
  check_size(spec, x.size());
  check_interior(k, x);
  if (spec.kind == SetKind::box) {
    ProxOptions opts;
    opts.tol = tol;
    return right_prox(k, box_indicator(spec), 1.0, x, opts).point;
  }

  // Optimality: f''(p_j)(p_j - x_j) = -lambda a_j. Each p_j(lambda) comes from
  // a monotone scalar solve; the outer equation <a, p(lambda)> = b is
  // nonincreasing in lambda.
  const std::size_t n = x.size();
  const auto& a = spec.normal;
  const auto& tr = k.traits();
  auto coord_at = [&](std::size_t j, double lambda) {
    if (a[j] == 0.0) return x[j];
    detail::InclusionProblem inner;
    inner.residual = [&](double t) -> Interval {
      const double r = k.hess(t) * (t - x[j]) + lambda * a[j];
      return {r, r};
    };
    if (k.has_third()) {
      inner.slope = [&](double t) { return k.third(t) * (t - x[j]) + k.hess(t); };
    }
    inner.lower = tr.int_lower;
    inner.upper = tr.int_upper;
    inner.start = x[j];
    // Saturates at the edge of U when -lambda a_j is out of range.
    return detail::solve_inclusion(inner, tol, 400, true).t;
  };
  auto point_at = [&](double lambda) {
    std::vector<double> p(n);
    for (std::size_t j = 0; j < n; ++j) p[j] = coord_at(j, lambda);
    return p;
  };
  detail::InclusionProblem prob;
  prob.residual = [&](double lambda) -> Interval {
    const double r = spec.offset - dot(a, point_at(lambda));
    return {r, r};
  };
  if (k.has_third()) {
    prob.slope = [&](double lambda) {
      const std::vector<double> p = point_at(lambda);
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (a[j] == 0.0) continue;
        if (!k.in_interior(p[j])) return std::nan("");
        s += a[j] * a[j] / (k.third(p[j]) * (p[j] - x[j]) + k.hess(p[j]));
      }
      return s;
    };
  }
  return finish(k, point_at(solve_dual(prob, tol)));
}

std::vector<double> orthogonal_project(const ProjectionSpec& spec, std::span<const double> x) {
  spec.validate();
  check_size(spec, x.size());
  std::vector<double> p(x.begin(), x.end());
  if (spec.kind == SetKind::box) {
    for (std::size_t j = 0; j < p.size(); ++j) p[j] = std::clamp(p[j], spec.lower[j], spec.upper[j]);
    return p;
  }
  const double scale = (dot(spec.normal, x) - spec.offset) / dot(spec.normal, spec.normal);
  for (std::size_t j = 0; j < p.size(); ++j) p[j] -= scale * spec.normal[j];
  return p;
}

double left_variational_gap(const LegendreKernel& k, std::span<const double> y,
                            std::span<const double> p, std::span<const double> z) {
  double s = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) s += (k.grad(y[j]) - k.grad(p[j])) * (z[j] - p[j]);
  return s;
}

double right_variational_gap(const LegendreKernel& k, std::span<const double> x,
                             std::span<const double> p, std::span<const double> z) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) s += k.hess(p[j]) * (x[j] - p[j]) * (z[j] - p[j]);
  return s;
}

} // namespace bregenv
