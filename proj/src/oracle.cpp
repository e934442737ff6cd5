#include "bregenv/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bregenv/error.hpp"

namespace bregenv::oracle {

namespace {

constexpr Real kInf = std::numeric_limits<Real>::infinity();
const Real kInvPhi = (std::sqrt(5.0L) - 1.0L) / 2.0L;

bool finite(Real v) { return std::isfinite(v); }

Real xlogx(Real t) { return t == 0.0L ? 0.0L : t * std::log(t); }
Real xlog_ratio(Real x, Real y) { return x == 0.0L ? 0.0L : x * std::log(x / y); }

// Golden-section search on [a, b]; +inf values simply lose comparisons.
OracleResult golden(const Objective1d& f, Real a, Real b, Real tol) {
  OracleResult r;
  r.bracket = {a, b};
  Real c = b - kInvPhi * (b - a);
  Real d = a + kInvPhi * (b - a);
  Real fc = f(c);
  Real fd = f(d);
  int depth = 0;
  while (b - a > tol && depth < 400) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
    ++depth;
  }
  r.argmin = 0.5L * (a + b);
  r.value = f(r.argmin);
  r.depth = depth;
  return r;
}

} // namespace

OracleResult minimize_1d(const Objective1d& f, Bracket bracket, Real tol, int prescan) {
  if (!(bracket.lo < bracket.hi)) {
    throw Error(ErrorCode::parameter, "oracle bracket must satisfy lo < hi");
  }
  prescan = std::max(prescan, 3);
  const Real step = (bracket.hi - bracket.lo) / static_cast<Real>(prescan - 1);
  int best = -1;
  Real best_value = kInf;
  for (int i = 0; i < prescan; ++i) {
    const Real t = (i == prescan - 1) ? bracket.hi : bracket.lo + step * i;
    const Real v = f(t);
    if (finite(v) && (best < 0 || v < best_value)) {
      best = i;
      best_value = v;
    }
  }
  if (best < 0) {
    throw Error(ErrorCode::infeasible, "oracle: objective is +inf on the whole bracket");
  }
  const Real a = bracket.lo + step * std::max(best - 1, 0);
  const Real b = best + 1 >= prescan - 1 ? bracket.hi : bracket.lo + step * (best + 1);
  OracleResult r = golden(f, a, b, tol);
  // Guard against a basin endpoint beating the golden-section interior (only
  // possible for a minimizer sitting exactly on a scan point at a domain edge).
  const Real t_best = bracket.lo + step * best;
  if (!(r.value <= best_value)) {
    r.argmin = t_best;
    r.value = best_value;
  }
  return r;
}

Real numeric_conjugate(const Objective1d& g, Real ystar, Bracket bracket, Real tol) {
  auto h = [&](Real x) { return g(x) - x * ystar; };
  for (int expansion = 0; expansion <= 12; ++expansion) {
    const OracleResult r = minimize_1d(h, bracket, tol);
    const Real width = bracket.hi - bracket.lo;
    const Real margin = 2.0L * width / (kDefaultPrescan - 1);
    const bool at_lo = r.argmin - bracket.lo <= margin;
    const bool at_hi = bracket.hi - r.argmin <= margin;
    bool keeps_going = false;
    if (at_lo) {
      const Real probe = h(bracket.lo - margin);
      keeps_going = finite(probe) && probe < r.value;
      if (keeps_going) bracket.lo -= width;
    }
    if (at_hi) {
      const Real probe = h(bracket.hi + margin);
      if (finite(probe) && probe < r.value) {
        keeps_going = true;
        bracket.hi += width;
      }
    }
    if (!keeps_going) return -r.value;
  }
  throw Error(ErrorCode::unbounded, "numeric conjugate appears unbounded");
}

std::vector<double> grid_argmin(const std::function<double(std::span<const double>)>& f,
                                std::span<const Interval> box, double resolution) {
  if (box.empty() || !(resolution > 0.0)) {
    throw Error(ErrorCode::parameter, "grid_argmin needs a nonempty box and resolution > 0");
  }
  const std::size_t n = box.size();
  std::vector<std::size_t> counts(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (!(box[j].lo <= box[j].hi) || !std::isfinite(box[j].lo) || !std::isfinite(box[j].hi)) {
      throw Error(ErrorCode::parameter, "grid_argmin needs a finite box");
    }
    counts[j] =
        static_cast<std::size_t>(std::floor((box[j].hi - box[j].lo) / resolution + 1e-9)) + 1;
  }
  std::vector<std::size_t> idx(n, 0);
  std::vector<double> point(n), best;
  double best_value = std::numeric_limits<double>::infinity();
  for (;;) {
    for (std::size_t j = 0; j < n; ++j) point[j] = box[j].lo + resolution * idx[j];
    const double v = f(point);
    if (best.empty() || v < best_value) {
      best = point;
      best_value = v;
    }
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (++idx[j] < counts[j]) break;
      idx[j] = 0;
      if (j == 0) return best;
    }
  }
}

Real kernel_value(const LegendreKernel& k, Real t) {
  switch (k.family()) {
  case KernelFamily::energy:
    return 0.5L * t * t;
  case KernelFamily::boltzmann_shannon:
    return t < 0.0L ? kInf : xlogx(t) - t;
  case KernelFamily::fermi_dirac:
    return (t < 0.0L || t > 1.0L) ? kInf : xlogx(t) + xlogx(1.0L - t);
  case KernelFamily::custom:
    break;
  }
  const double td = static_cast<double>(t);
  return k.in_domain(td) ? static_cast<Real>(k.value(td)) : kInf;
}

Real kernel_conj(const LegendreKernel& k, Real s) {
  switch (k.family()) {
  case KernelFamily::energy:
    return 0.5L * s * s;
  case KernelFamily::boltzmann_shannon:
    return std::exp(s);
  case KernelFamily::fermi_dirac:
    return s > 0.0L ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s));
  case KernelFamily::custom:
    break;
  }
  return k.conj(static_cast<double>(s));
}

Real kernel_conj_grad(const LegendreKernel& k, Real s) {
  switch (k.family()) {
  case KernelFamily::energy:
    return s;
  case KernelFamily::boltzmann_shannon:
    return std::exp(s);
  case KernelFamily::fermi_dirac:
    return s >= 0.0L ? 1.0L / (1.0L + std::exp(-s)) : std::exp(s) / (1.0L + std::exp(s));
  case KernelFamily::custom:
    break;
  }
  return k.conj_grad(static_cast<double>(s));
}

Real bregman(const LegendreKernel& k, Real x, Real y) {
  switch (k.family()) {
  case KernelFamily::energy:
    return 0.5L * (x - y) * (x - y);
  case KernelFamily::boltzmann_shannon:
    if (!(y > 0.0L) || x < 0.0L) return kInf;
    return xlog_ratio(x, y) - x + y;
  case KernelFamily::fermi_dirac:
    if (!(y > 0.0L && y < 1.0L) || x < 0.0L || x > 1.0L) return kInf;
    return xlog_ratio(x, y) + xlog_ratio(1.0L - x, 1.0L - y);
  case KernelFamily::custom:
    break;
  }
  const double xd = static_cast<double>(x);
  const double yd = static_cast<double>(y);
  if (!k.in_interior(yd) || !k.in_domain(xd)) return kInf;
  return static_cast<Real>(k.value(xd)) - k.value(yd) -
         static_cast<Real>(k.grad(yd)) * (x - static_cast<Real>(yd));
}

Real objective_value(const ScalarObjective& piece, Real t) {
  const auto& p = piece.params();
  const Real s = piece.scale();
  switch (piece.family()) {
  case ObjectiveFamily::abs_deviation:
    return s * std::fabs(t - static_cast<Real>(p[0]));
  case ObjectiveFamily::indicator_interval:
    return (t < static_cast<Real>(p[0]) || t > static_cast<Real>(p[1])) ? kInf : 0.0L;
  case ObjectiveFamily::quadratic: {
    const Real d = t - static_cast<Real>(p[1]);
    return s * 0.5L * static_cast<Real>(p[0]) * d * d;
  }
  case ObjectiveFamily::custom:
    break;
  }
  return piece.value(static_cast<double>(t));
}

Bracket search_bracket(const LegendreKernel& k, Real center, Real half_width) {
  const auto& tr = k.traits();
  Real lo = center - half_width;
  Real hi = center + half_width;
  if (std::isfinite(tr.dom_lower)) lo = std::max(lo, static_cast<Real>(tr.dom_lower));
  if (std::isfinite(tr.dom_upper)) hi = std::min(hi, static_cast<Real>(tr.dom_upper));
  return {lo, hi};
}

namespace {

Real prox_half_width(Real gamma, Real center) {
  return 50.0L * std::max(1.0L, gamma) + 10.0L * std::fabs(center);
}

// The kernel bracket cut down to the closed domain of theta, so a narrow
// domain is not lost between pre-scan points.
Bracket prox_bracket(const LegendreKernel& k, const ScalarObjective& piece, Real gamma,
                     Real center) {
  Bracket b = search_bracket(k, center, prox_half_width(gamma, center));
  b.lo = std::max(b.lo, static_cast<Real>(piece.domain().lo));
  b.hi = std::min(b.hi, static_cast<Real>(piece.domain().hi));
  return b;
}

OracleResult minimize_on(const Objective1d& f, Bracket b) {
  if (b.lo < b.hi) return minimize_1d(f, b);
  if (b.lo == b.hi && finite(f(b.lo))) return {b.lo, f(b.lo), b, 0};
  throw Error(ErrorCode::infeasible, "oracle: domain of theta misses the kernel domain");
}

} // namespace

OracleResult left_prox_1d(const LegendreKernel& k, const ScalarObjective& piece, Real gamma,
                          Real y) {
  auto obj = [&](Real t) {
    const Real th = objective_value(piece, t);
    if (!finite(th)) return kInf;
    return th + bregman(k, t, y) / gamma;
  };
  return minimize_on(obj, prox_bracket(k, piece, gamma, y));
}

OracleResult right_prox_1d(const LegendreKernel& k, const ScalarObjective& piece, Real gamma,
                           Real x) {
  auto obj = [&](Real t) {
    const Real th = objective_value(piece, t);
    if (!finite(th)) return kInf;
    return th + bregman(k, x, t) / gamma;
  };
  return minimize_on(obj, prox_bracket(k, piece, gamma, x));
}

} // namespace bregenv::oracle
