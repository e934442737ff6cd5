#include "bregenv/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>

#include "bregenv/error.hpp"

namespace bregenv {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double sup_dist(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a[j] - b[j]));
  return d;
}

// Worst violation of "value is nonincreasing in gamma" (sign = +1) or
// nondecreasing (sign = -1) over adjacent records.
double worst_violation(std::span<const SweepRecord> r,
                       const std::function<double(const SweepRecord&)>& get, double sign) {
  double worst = 0.0;
  for (std::size_t i = 1; i < r.size(); ++i) {
    worst = std::max(worst, sign * (get(r[i]) - get(r[i - 1])));
  }
  return worst;
}

LimitCheck property(std::string name, double violation, double slack) {
  LimitCheck c;
  c.name = std::move(name);
  c.property = true;
  c.gap = violation;
  c.tolerance = slack;
  c.passed = violation <= slack;
  c.trend_decreasing = c.passed;
  return c;
}

// Limit diagnostic toward the small-gamma end (front) or the large-gamma end.
LimitCheck limit(std::string name, std::span<const SweepRecord> r, bool front,
                 const std::function<std::optional<double>(const SweepRecord&)>& gap,
                 double tol) {
  LimitCheck c;
  c.name = std::move(name);
  c.tolerance = tol;
  const std::size_t n = r.size();
  const std::size_t m = std::min<std::size_t>(3, n);
  std::vector<double> tail;
  for (std::size_t i = 0; i < m; ++i) {
    const auto g = gap(front ? r[m - 1 - i] : r[n - m + i]);
    if (!g) {
      c.available = false;
      return c;
    }
    tail.push_back(*g);
  }
  // tail runs toward the extreme gamma.
  c.gap = tail.back();
  c.trend_decreasing = m >= 2;
  for (std::size_t i = 1; i < tail.size(); ++i) {
    if (tail[i] > tail[i - 1] * (1.0 + 1e-9) + 1e-15) c.trend_decreasing = false;
  }
  c.passed = c.gap <= tol && c.trend_decreasing;
  return c;
}

} // namespace

const LimitCheck* LimitReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::vector<SweepRecord> gamma_sweep(const LegendreKernel& k, const ConvexObjective& th,
                                     std::span<const double> point, Side side,
                                     std::span<const double> gammas, const ProxOptions& opts) {
  if (gammas.empty()) throw Error(ErrorCode::parameter, "empty gamma list");
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    if (!(gammas[i] > 0.0) || !std::isfinite(gammas[i])) {
      throw Error(ErrorCode::parameter, "gamma values must be positive and finite");
    }
    if (i > 0 && !(gammas[i] > gammas[i - 1])) {
      throw Error(ErrorCode::parameter, "gamma values must be strictly ascending");
    }
  }
  std::vector<SweepRecord> out;
  out.reserve(gammas.size());
  for (double g : gammas) {
    ProxOutcome p;
    try {
      p = prox(side, k, th, g, point, opts);
    } catch (const Error& e) {
      throw Error(e.code(), "gamma=" + fmt(g) + ": " + e.what());
    }
    SweepRecord r;
    r.gamma = g;
    r.side = side;
    r.point.assign(point.begin(), point.end());
    r.theta_at_prox = th.value(p.point);
    r.bregman_term = side == Side::left ? bregman_distance(k, p.point, point)
                                        : bregman_distance(k, point, p.point);
    r.scaled_term = r.bregman_term / g;
    r.envelope = r.theta_at_prox + r.scaled_term;
    r.prox_point = std::move(p.point);
    r.branch = p.branch;
    r.residual = p.residual;
    r.iterations = p.iterations;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<double> log_gamma_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi) || n < 1) {
    throw Error(ErrorCode::parameter, "gamma grid needs 0 < lo <= hi and n >= 1");
  }
  if (n == 1) return {lo};
  std::vector<double> g(static_cast<std::size_t>(n));
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * i / (n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

LimitReport limit_report(const LegendreKernel& k, const ConvexObjective& th,
                         std::span<const SweepRecord> records, const LimitTolerances& tol) {
  if (records.empty()) throw Error(ErrorCode::parameter, "limit report needs records");
  const std::vector<double>& point = records.front().point;
  for (const auto& r : records) {
    if (r.point != point || r.side != records.front().side) {
      throw Error(ErrorCode::parameter, "records must come from one (point, side) sweep");
    }
  }
  th.check_dimension(point.size());

  const double theta_point = th.value(point);
  std::optional<double> inf_theta = 0.0;
  std::optional<std::vector<double>> target = point;
  for (std::size_t j = 0; j < point.size(); ++j) {
    const ScalarObjective& piece = th.piece(j);
    if (piece.known_infimum() && inf_theta) *inf_theta += *piece.known_infimum();
    else inf_theta.reset();
    if (piece.known_argmin() && target) {
      (*target)[j] = std::clamp(point[j], piece.known_argmin()->lo, piece.known_argmin()->hi);
    } else {
      target.reset();
    }
  }
  if (target && !k.in_domain(std::span<const double>(*target))) target.reset();

  LimitReport rep;
  rep.checks.push_back(property("envelope_nonincreasing",
                                worst_violation(records, [](auto& r) { return r.envelope; }, 1.0),
                                tol.monotone_slack));
  rep.checks.push_back(property(
      "theta_prox_nonincreasing",
      worst_violation(records, [](auto& r) { return r.theta_at_prox; }, 1.0), tol.monotone_slack));
  rep.checks.push_back(property(
      "bregman_term_nondecreasing",
      worst_violation(records, [](auto& r) { return r.bregman_term; }, -1.0), tol.monotone_slack));

  auto known = [](bool ok, double v) { return ok ? std::optional<double>(v) : std::nullopt; };
  rep.checks.push_back(limit(
      "envelope_to_theta_small_gamma", records, true,
      [&](const SweepRecord& r) {
        return known(std::isfinite(theta_point), std::abs(r.envelope - theta_point));
      },
      tol.limit_gap));
  rep.checks.push_back(limit(
      "envelope_to_inf_large_gamma", records, false,
      [&](const SweepRecord& r) {
        return known(inf_theta.has_value(), std::abs(r.envelope - inf_theta.value_or(0.0)));
      },
      tol.limit_gap));
  rep.checks.push_back(limit(
      "prox_to_point_small_gamma", records, true,
      [&](const SweepRecord& r) { return std::optional<double>(sup_dist(r.prox_point, point)); },
      tol.limit_gap));
  rep.checks.push_back(limit(
      "prox_to_projection_large_gamma", records, false,
      [&](const SweepRecord& r) {
        return target ? std::optional<double>(sup_dist(r.prox_point, *target)) : std::nullopt;
      },
      tol.limit_gap));
  rep.checks.push_back(limit(
      "scaled_term_to_zero_small_gamma", records, true,
      [&](const SweepRecord& r) { return std::optional<double>(std::abs(r.scaled_term)); },
      tol.scaled_term));

  for (const auto& c : rep.checks) {
    if (c.property) rep.properties_hold = rep.properties_hold && c.passed;
    else rep.limits_achieved = rep.limits_achieved && c.available && c.passed;
  }
  return rep;
}

} // namespace bregenv
