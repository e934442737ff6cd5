#include "bregenv/bregman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bregenv/error.hpp"

namespace bregenv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// x ln(x / y) with 0 ln(0 / y) := 0.
double xlog_ratio(double x, double y) { return x == 0.0 ? 0.0 : x * std::log(x / y); }

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorCode::dimension, "point sizes differ: " + std::to_string(a) + " vs " +
                                          std::to_string(b));
  }
}

} // namespace

const char* to_string(Side side) noexcept { return side == Side::left ? "left" : "right"; }

Side parse_side(const std::string& s) {
  if (s == "left") return Side::left;
  if (s == "right") return Side::right;
  throw Error(ErrorCode::parse, "side must be left|right, got '" + s + "'");
}

double bregman_distance(const LegendreKernel& k, double x, double y) {
  if (!k.in_interior(y) || !k.in_domain(x)) return kInf;
  double d = 0.0;
  switch (k.family()) {
  case KernelFamily::energy:
    d = 0.5 * (x - y) * (x - y);
    break;
  case KernelFamily::boltzmann_shannon:
    d = xlog_ratio(x, y) - x + y;
    break;
  case KernelFamily::fermi_dirac:
    d = xlog_ratio(x, y) + xlog_ratio(1.0 - x, 1.0 - y);
    break;
  case KernelFamily::custom:
    d = k.value(x) - k.value(y) - k.grad(y) * (x - y);
    break;
  }
  return std::max(d, 0.0);
}

double bregman_distance(const LegendreKernel& k, std::span<const double> x,
                        std::span<const double> y) {
  check_sizes(x.size(), y.size());
  double sum = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double d = bregman_distance(k, x[j], y[j]);
    if (d == kInf) return kInf;
    sum += d;
  }
  return sum;
}

double four_point_gap(const LegendreKernel& k, std::span<const double> x1,
                      std::span<const double> x2, std::span<const double> y1,
                      std::span<const double> y2) {
  check_sizes(x1.size(), x2.size());
  check_sizes(x1.size(), y1.size());
  check_sizes(x1.size(), y2.size());
  if (!k.in_interior(y1) || !k.in_interior(y2) || !k.in_domain(x1) || !k.in_domain(x2)) {
    throw Error(ErrorCode::domain, "four-point identity needs y1, y2 in U and x1, x2 in dom f");
  }
  return bregman_distance(k, x1, y2) + bregman_distance(k, x2, y1) -
         bregman_distance(k, x1, y1) - bregman_distance(k, x2, y2);
}

double four_point_inner(const LegendreKernel& k, std::span<const double> x1,
                        std::span<const double> x2, std::span<const double> y1,
                        std::span<const double> y2) {
  check_sizes(x1.size(), x2.size());
  check_sizes(x1.size(), y1.size());
  check_sizes(x1.size(), y2.size());
  double s = 0.0;
  for (std::size_t j = 0; j < x1.size(); ++j) {
    s += (k.grad(y1[j]) - k.grad(y2[j])) * (x1[j] - x2[j]);
  }
  return s;
}

bool CoercivityCertificate::guaranteed() const noexcept {
  return a || b || (side == Side::left ? c : d);
}

std::string CoercivityCertificate::describe() const {
  std::string out;
  auto add = [&](bool flag, const char* tag) {
    if (!flag) return;
    if (!out.empty()) out += ",";
    out += tag;
  };
  add(a, "a");
  add(b, "b");
  if (side == Side::left) add(c, "c");
  else add(d, "d");
  return out.empty() ? "unknown" : out;
}

Interval feasible_interval(const LegendreKernel& k, const ScalarObjective& piece) {
  const auto& tr = k.traits();
  const Interval dom = piece.domain();
  const double lo = std::max(tr.int_lower, dom.lo);
  const double hi = std::min(tr.int_upper, dom.hi);
  const bool empty = dom.lo >= tr.int_upper || dom.hi <= tr.int_lower || lo > hi;
  if (empty) {
    throw Error(ErrorCode::infeasible,
                "U ∩ dom theta is empty for kernel " + k.name() + " and " + piece.name());
  }
  return {lo, hi};
}

CoercivityCertificate coercivity_certificate(const LegendreKernel& k,
                                             const ConvexObjective& th, Side side) {
  CoercivityCertificate cert;
  cert.side = side;
  bool bounded = true;
  bool inf_known = true;
  for (std::size_t j = 0; j < th.pieces(); ++j) {
    const Interval box = feasible_interval(k, th.piece(j));
    bounded = bounded && std::isfinite(box.lo) && std::isfinite(box.hi);
    inf_known = inf_known && th.piece(j).known_infimum().has_value();
  }
  cert.a = bounded;
  cert.b = inf_known;
  cert.c = k.traits().supercoercive;
  cert.d = k.traits().right_supercoercive;
  return cert;
}

} // namespace bregenv
