#include "bregenv/prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bregenv/closed_form.hpp"
#include "bregenv/error.hpp"
#include "monotone_solver.hpp"
#include "prox_detail.hpp"

namespace bregenv {

namespace {

Interval shift(const Interval& g, double gamma, double offset) {
  return {offset + gamma * g.lo, offset + gamma * g.hi};
}

// A point of U to start the right-prox search from when x itself is on the
// boundary of dom f.
double interior_start(const LegendreKernel& k, const ScalarObjective& piece, double x) {
  if (k.in_interior(x)) return x;
  const Interval box = feasible_interval(k, piece);
  if (std::isfinite(box.lo) && std::isfinite(box.hi)) return 0.5 * box.lo + 0.5 * box.hi;
  if (std::isfinite(box.lo)) return box.lo + std::max(1.0, std::abs(box.lo));
  if (std::isfinite(box.hi)) return box.hi - std::max(1.0, std::abs(box.hi));
  return 0.0;
}

ProxBranch branch_of(const detail::InclusionResult& r) {
  return r.newton_used ? ProxBranch::newton_fallback : ProxBranch::bisection;
}

ProxBranch merge(ProxBranch acc, ProxBranch b) {
  if (acc == ProxBranch::newton_fallback || b == ProxBranch::newton_fallback) {
    return ProxBranch::newton_fallback;
  }
  if (acc == ProxBranch::bisection || b == ProxBranch::bisection) return ProxBranch::bisection;
  return ProxBranch::closed_form;
}

void check_point(const LegendreKernel& k, const ConvexObjective& th,
                 std::span<const double> point, const char* what) {
  if (point.empty()) throw Error(ErrorCode::dimension, "empty point");
  th.check_dimension(point.size());
  for (std::size_t j = 0; j < point.size(); ++j) {
    if (!k.in_interior(point[j])) {
      throw Error(ErrorCode::domain, std::string(what) + " coordinate " + std::to_string(j) +
                                         " is outside U of kernel " + k.name());
    }
  }
}

} // namespace

const char* to_string(ProxBranch branch) noexcept {
  switch (branch) {
  case ProxBranch::closed_form:
    return "closed_form";
  case ProxBranch::bisection:
    return "bisection";
  case ProxBranch::newton_fallback:
    return "newton_fallback";
  }
  return "unknown";
}

namespace detail {

void check_gamma(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::parameter, "gamma must be positive and finite");
  }
}

CoordinateProx left_prox_coord(const LegendreKernel& k, const ScalarObjective& piece,
                               double gamma, double y, const ProxOptions& opts) {
  const double gy = k.grad(y);
  InclusionProblem prob;
  prob.residual = [&](double t) { return shift(piece.subgradient(t), gamma, k.grad(t) - gy); };
  if (piece.has_curvature()) {
    prob.slope = [&](double t) { return k.hess(t) + gamma * piece.curvature(t); };
  }

  if (opts.allow_closed_form && piece.family() == ObjectiveFamily::abs_deviation) {
    const auto p =
        left_prox_closed_form_abs(k.family(), piece.params()[0], gamma * piece.scale(), y);
    if (p && k.in_interior(*p)) {
      CoordinateProx out;
      out.point = *p;
      out.residual = prob.residual(*p).distance_to_zero();
      return out;
    }
  }

  feasible_interval(k, piece);
  prob.lower = k.traits().int_lower;
  prob.upper = k.traits().int_upper;
  prob.kinks = piece.kinks();
  prob.start = y;
  const InclusionResult r = solve_inclusion(prob, opts.tol, opts.max_iter);
  CoordinateProx out;
  out.point = r.t;
  out.residual = r.residual;
  out.iterations = r.iterations;
  out.branch = branch_of(r);
  return out;
}

CoordinateProx right_prox_coord(const LegendreKernel& k, const ScalarObjective& piece,
                                double gamma, double x, const ProxOptions& opts,
                                bool allow_boundary) {
  InclusionProblem prob;
  prob.residual = [&](double t) { return shift(piece.subgradient(t), gamma, k.hess(t) * (t - x)); };
  if (piece.has_curvature() && k.has_third()) {
    prob.slope = [&](double t) {
      return k.third(t) * (t - x) + k.hess(t) + gamma * piece.curvature(t);
    };
  }

  if (opts.allow_closed_form && piece.family() == ObjectiveFamily::abs_deviation) {
    const auto p =
        right_prox_closed_form_abs(k.family(), piece.params()[0], gamma * piece.scale(), x);
    if (p && k.in_interior(*p)) {
      CoordinateProx out;
      out.point = *p;
      out.residual = prob.residual(*p).distance_to_zero();
      return out;
    }
  }

  prob.lower = k.traits().int_lower;
  prob.upper = k.traits().int_upper;
  prob.kinks = piece.kinks();
  prob.start = interior_start(k, piece, x);
  const InclusionResult r = solve_inclusion(prob, opts.tol, opts.max_iter, allow_boundary);
  CoordinateProx out;
  out.point = r.t;
  out.residual = r.residual;
  out.iterations = r.iterations;
  out.branch = branch_of(r);
  out.at_boundary = r.at_boundary;
  if (r.at_boundary) {
    // The residual keeps its sign up to the edge: the minimizer is the
    // closed-domain endpoint itself.
    const double edge = r.t < prob.start ? k.traits().dom_lower : k.traits().dom_upper;
    if (std::isfinite(edge)) {
      out.point = edge;
      out.residual = 0.0;
    }
  }
  return out;
}

} // namespace detail

ProxOutcome left_prox(const LegendreKernel& k, const ConvexObjective& th, double gamma,
                      std::span<const double> y, const ProxOptions& opts) {
  detail::check_gamma(gamma);
  check_point(k, th, y, "y");
  ProxOutcome out;
  out.point.resize(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) {
    const ScalarObjective& piece = th.piece(j);
    const detail::CoordinateProx c = detail::left_prox_coord(k, piece, gamma, y[j], opts);
    out.point[j] = c.point;
    out.envelope_value += piece.value(c.point) + bregman_distance(k, c.point, y[j]) / gamma;
    out.residual = std::max(out.residual, c.residual);
    out.iterations += c.iterations;
    out.branch = j == 0 ? c.branch : merge(out.branch, c.branch);
  }
  return out;
}

ProxOutcome right_prox(const LegendreKernel& k, const ConvexObjective& th, double gamma,
                       std::span<const double> x, const ProxOptions& opts) {
  detail::check_gamma(gamma);
  check_point(k, th, x, "x");
  ProxOutcome out;
  out.point.resize(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const ScalarObjective& piece = th.piece(j);
    feasible_interval(k, piece);
    const detail::CoordinateProx c = detail::right_prox_coord(k, piece, gamma, x[j], opts);
    out.point[j] = c.point;
    out.envelope_value += piece.value(c.point) + bregman_distance(k, x[j], c.point) / gamma;
    out.residual = std::max(out.residual, c.residual);
    out.iterations += c.iterations;
    out.branch = j == 0 ? c.branch : merge(out.branch, c.branch);
  }
  return out;
}

ProxOutcome prox(Side side, const LegendreKernel& k, const ConvexObjective& th, double gamma,
                 std::span<const double> point, const ProxOptions& opts) {
  return side == Side::left ? left_prox(k, th, gamma, point, opts)
                            : right_prox(k, th, gamma, point, opts);
}

ProximalPointResult proximal_point_solve(const LegendreKernel& k, const ConvexObjective& th,
                                         double gamma, std::span<const double> x0,
                                         int max_iter, double tol, const ProxOptions& opts) {
  detail::check_gamma(gamma);
  if (max_iter < 1) throw Error(ErrorCode::parameter, "max_iter must be >= 1");
  check_point(k, th, x0, "x0");
  ProximalPointResult res;
  res.certificate = coercivity_certificate(k, th, Side::left);
  std::vector<double> x(x0.begin(), x0.end());
  res.trajectory.push_back(x);
  for (int it = 0; it < max_iter; ++it) {
    ProxOutcome step = left_prox(k, th, gamma, x, opts);
    if (!k.in_interior(std::span<const double>(step.point))) {
      throw Error(ErrorCode::internal, "proximal-point iterate left U");
    }
    double diff = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) diff = std::max(diff, std::abs(step.point[j] - x[j]));
    x = std::move(step.point);
    res.trajectory.push_back(x);
    res.iterations = it + 1;
    res.step_residual = diff;
    if (diff <= tol) {
      res.converged = true;
      break;
    }
  }
  res.point = x;
  return res;
}

} // namespace bregenv
