#include "bregenv/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bregenv/error.hpp"
#include "bregenv/oracle.hpp"
#include "prox_detail.hpp"

namespace bregenv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

EnvelopeSample base_sample(Side side, double gamma, std::span<const double> point) {
  EnvelopeSample s;
  s.point.assign(point.begin(), point.end());
  s.gamma = gamma;
  s.side = side;
  return s;
}

void fill_from(EnvelopeSample& s, ProxOutcome&& p) {
  s.value = p.envelope_value;
  s.prox_point = std::move(p.point);
  s.branch = p.branch;
  s.residual = p.residual;
  s.iterations = p.iterations;
}

void check_common(const ConvexObjective& th, double gamma, std::span<const double> point) {
  detail::check_gamma(gamma);
  if (point.empty()) throw Error(ErrorCode::dimension, "empty point");
  th.check_dimension(point.size());
}

} // namespace

EnvelopeSample left_envelope(const LegendreKernel& k, const ConvexObjective& th, double gamma,
                             std::span<const double> y, bool want_gradient,
                             const ProxOptions& opts) {
  check_common(th, gamma, y);
  EnvelopeSample s = base_sample(Side::left, gamma, y);
  if (!k.in_interior(y)) {
    s.value = kInf;
    s.note = "point outside U";
    return s;
  }
  fill_from(s, left_prox(k, th, gamma, y, opts));
  if (want_gradient) {
    std::vector<double> g(y.size());
    for (std::size_t j = 0; j < y.size(); ++j) {
      g[j] = k.hess(y[j]) * (y[j] - s.prox_point[j]) / gamma;
    }
    s.gradient = std::move(g);
  }
  return s;
}

EnvelopeSample right_envelope(const LegendreKernel& k, const ConvexObjective& th,
                              double gamma, std::span<const double> x, bool want_gradient,
                              const ProxOptions& opts) {
  check_common(th, gamma, x);
  EnvelopeSample s = base_sample(Side::right, gamma, x);
  if (!k.in_domain(x)) {
    s.value = kInf;
    s.note = "point outside dom f";
    return s;
  }
  if (k.in_interior(x)) {
    fill_from(s, right_prox(k, th, gamma, x, opts));
    if (want_gradient) {
      std::vector<double> g(x.size());
      for (std::size_t j = 0; j < x.size(); ++j) {
        g[j] = (k.grad(x[j]) - k.grad(s.prox_point[j])) / gamma;
      }
      s.gradient = std::move(g);
    }
    return s;
  }

  // Some coordinate sits on the boundary of dom f: the envelope is finite
  // there but not differentiable, and the infimum may only be approached.
  s.prox_point.resize(x.size());
  s.value = 0.0;
  bool first = true;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const ScalarObjective& piece = th.piece(j);
    feasible_interval(k, piece);
    const detail::CoordinateProx c =
        detail::right_prox_coord(k, piece, gamma, x[j], opts, !k.in_interior(x[j]));
    s.prox_point[j] = c.point;
    // D(x, p) with p on the boundary is read as its closure: 0 when p = x.
    const double d = c.point == x[j] ? 0.0 : bregman_distance(k, x[j], c.point);
    s.value += piece.value(c.point) + d / gamma;
    s.residual = std::max(s.residual, c.residual);
    s.iterations += c.iterations;
    s.branch = first ? c.branch : std::max(s.branch, c.branch);
    first = false;
  }
  s.note = "point on the boundary of dom f; no gradient";
  return s;
}

EnvelopeSample envelope(Side side, const LegendreKernel& k, const ConvexObjective& th,
                        double gamma, std::span<const double> point, bool want_gradient,
                        const ProxOptions& opts) {
  return side == Side::left ? left_envelope(k, th, gamma, point, want_gradient, opts)
                            : right_envelope(k, th, gamma, point, want_gradient, opts);
}

std::pair<double, double> scaling_law_check(const LegendreKernel& k, const ConvexObjective& th,
                                            double gamma, double mu,
                                            std::span<const double> point, Side side,
                                            const ProxOptions& opts) {
  detail::check_gamma(gamma);
  detail::check_gamma(mu);
  const double scaled = envelope(side, k, th.scaled(gamma), mu, point, false, opts).value;
  const double plain = gamma * envelope(side, k, th, gamma * mu, point, false, opts).value;
  return {scaled, plain};
}

double conjugate_identity_gap(const LegendreKernel& k, const ConvexObjective& th, double gamma,
                              std::span<const double> point, Side side,
                              const ProxOptions& opts) {
  using oracle::Real;
  check_common(th, gamma, point);
  const Real g = gamma;
  Real rhs = 0.0L;
  std::vector<double> primal(point.size());
  for (std::size_t j = 0; j < point.size(); ++j) {
    const ScalarObjective& piece = th.piece(j);
    const Real p = point[j];
    if (side == Side::left) {
      // (gamma theta + f)* at the dual point y*.
      auto h = [&](Real t) {
        const Real th_t = oracle::objective_value(piece, t);
        if (!std::isfinite(th_t)) return std::numeric_limits<Real>::infinity();
        return g * th_t + oracle::kernel_value(k, t);
      };
      const Real y = oracle::kernel_conj_grad(k, p);
      const Real half = 50.0L * std::max(1.0L, g) + 10.0L * std::fabs(y);
      const Real conj = oracle::numeric_conjugate(h, p, oracle::search_bracket(k, y, half));
      rhs += oracle::kernel_conj(k, p) - conj;
      primal[j] = static_cast<double>(y);
    } else {
      // (gamma theta o grad f* + f*)* at the primal point x; dual variable s.
      auto h = [&](Real s) {
        const Real th_t = oracle::objective_value(piece, oracle::kernel_conj_grad(k, s));
        if (!std::isfinite(th_t)) return std::numeric_limits<Real>::infinity();
        return g * th_t + oracle::kernel_conj(k, s);
      };
      const Real s0 = k.grad(point[j]);
      const Real half = 50.0L * std::max(1.0L, g) + 10.0L * std::fabs(s0);
      const Real conj = oracle::numeric_conjugate(h, p, {s0 - half, s0 + half});
      rhs += oracle::kernel_value(k, p) - conj;
      primal[j] = point[j];
    }
  }
  const EnvelopeSample env = envelope(side, k, th, gamma, primal, false, opts);
  return static_cast<double>(std::fabs(g * static_cast<Real>(env.value) - rhs));
}

double classical_envelope(const ConvexObjective& th, double gamma, std::span<const double> y,
                          const ProxOptions& opts) {
  return left_envelope(kernel_energy(), th, gamma, y, false, opts).value;
}

} // namespace bregenv
