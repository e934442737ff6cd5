#include "bregenv/objective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "bregenv/error.hpp"
#include "parse_util.hpp"

namespace bregenv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_param(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

} // namespace

double Interval::distance_to_zero() const noexcept {
  if (lo > 0.0) return lo;
  if (hi < 0.0) return -hi;
  return 0.0;
}

ScalarObjective::ScalarObjective(std::string name, ObjectiveFamily family,
                                 std::vector<double> params, Functions fns,
                                 Interval domain, std::vector<double> kinks,
                                 std::optional<Interval> known_argmin,
                                 std::optional<double> known_infimum)
    : name_(std::move(name)), family_(family), params_(std::move(params)),
      fns_(std::move(fns)), domain_(domain), kinks_(std::move(kinks)),
      known_argmin_(known_argmin), known_infimum_(known_infimum) {
  if (!fns_.value || !fns_.subgradient) {
    throw Error(ErrorCode::parameter, name_ + ": objective is missing an evaluator");
  }
  if (domain_.lo > domain_.hi) {
    throw Error(ErrorCode::invalid_set, name_ + ": empty domain");
  }
  std::sort(kinks_.begin(), kinks_.end());
}

double ScalarObjective::value(double t) const {
  if (t < domain_.lo || t > domain_.hi) return kInf;
  return scale_ * fns_.value(t);
}

Interval ScalarObjective::subgradient(double t) const {
  if (t < domain_.lo) return {-kInf, -kInf};
  if (t > domain_.hi) return {kInf, kInf};
  Interval g = fns_.subgradient(t);
  return {scale_ * g.lo, scale_ * g.hi};
}

double ScalarObjective::curvature(double t) const {
  return fns_.curvature ? scale_ * fns_.curvature(t) : 0.0;
}

ScalarObjective ScalarObjective::scaled(double s) const {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw Error(ErrorCode::parameter, "objective scale must be positive and finite");
  }
  ScalarObjective out = *this;
  out.scale_ = scale_ * s;
  if (out.known_infimum_) *out.known_infimum_ *= s;
  if (s != 1.0) out.name_ = format_param(s) + "*" + name_;
  return out;
}

ScalarObjective objective_abs_deviation(double c) {
  if (!std::isfinite(c)) throw Error(ErrorCode::parameter, "abs: center must be finite");
  ScalarObjective::Functions fns{
      [c](double t) { return std::abs(t - c); },
      [c](double t) -> Interval {
        if (t < c) return {-1.0, -1.0};
        if (t > c) return {1.0, 1.0};
        return {-1.0, 1.0};
      },
      [](double) { return 0.0; },
  };
  return ScalarObjective("abs:" + format_param(c), ObjectiveFamily::abs_deviation, {c},
                         std::move(fns), {-kInf, kInf}, {c}, Interval{c, c}, 0.0);
}

ScalarObjective objective_indicator_interval(double a, double b) {
  if (std::isnan(a) || std::isnan(b) || a > b) {
    throw Error(ErrorCode::invalid_set, "ind: need a <= b, got [" + format_param(a) + ", " +
                                            format_param(b) + "]");
  }
  ScalarObjective::Functions fns{
      [](double) { return 0.0; },
      [a, b](double t) -> Interval {
        const double lo = (t == a) ? -kInf : 0.0;
        const double hi = (t == b) ? kInf : 0.0;
        return {lo, hi};
      },
      [](double) { return 0.0; },
  };
  std::vector<double> kinks{a};
  if (b != a) kinks.push_back(b);
  return ScalarObjective("ind:" + format_param(a) + "," + format_param(b),
                         ObjectiveFamily::indicator_interval, {a, b}, std::move(fns), {a, b},
                         std::move(kinks), Interval{a, b}, 0.0);
}

ScalarObjective objective_quadratic(double a, double c) {
  if (!(a >= 0.0)) {
    throw Error(ErrorCode::convexity, "quad: curvature a must be >= 0, got " + format_param(a));
  }
  if (!std::isfinite(a) || !std::isfinite(c)) {
    throw Error(ErrorCode::parameter, "quad: parameters must be finite");
  }
  ScalarObjective::Functions fns{
      [a, c](double t) { return 0.5 * a * (t - c) * (t - c); },
      [a, c](double t) -> Interval {
        const double g = a * (t - c);
        return {g, g};
      },
      [a](double) { return a; },
  };
  std::optional<Interval> argmin =
      a > 0.0 ? Interval{c, c} : Interval{-kInf, kInf};
  return ScalarObjective("quad:" + format_param(a) + "," + format_param(c),
                         ObjectiveFamily::quadratic, {a, c}, std::move(fns), {-kInf, kInf},
                         {}, argmin, 0.0);
}

ConvexObjective::ConvexObjective(ScalarObjective piece) { pieces_.push_back(std::move(piece)); }

ConvexObjective::ConvexObjective(std::vector<ScalarObjective> pieces)
    : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw Error(ErrorCode::parameter, "objective has no pieces");
}

void ConvexObjective::check_dimension(std::size_t n) const {
  if (n == 0) throw Error(ErrorCode::dimension, "empty point");
  if (pieces_.size() != 1 && pieces_.size() != n) {
    throw Error(ErrorCode::dimension, "objective has " + std::to_string(pieces_.size()) +
                                          " pieces but the point has " + std::to_string(n) +
                                          " coordinates");
  }
}

const ScalarObjective& ConvexObjective::piece(std::size_t j) const {
  return pieces_.size() == 1 ? pieces_.front() : pieces_.at(j);
}

double ConvexObjective::value(std::span<const double> x) const {
  check_dimension(x.size());
  double sum = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) sum += piece(j).value(x[j]);
  return sum;
}

ConvexObjective ConvexObjective::scaled(double s) const {
  std::vector<ScalarObjective> out;
  out.reserve(pieces_.size());
  for (const auto& p : pieces_) out.push_back(p.scaled(s));
  return ConvexObjective(std::move(out));
}

std::string ConvexObjective::name() const {
  std::string out;
  for (const auto& p : pieces_) {
    if (!out.empty()) out += ';';
    out += p.name();
  }
  return out;
}

ConvexObjective parse_objective(const std::string& spec) {
  // Tokens carrying "name:" start a new piece; bare numbers extend the
  // argument list of the current one.
  struct Pending {
    std::string family;
    std::vector<double> args;
  };
  std::vector<Pending> pending;
  for (const std::string& raw : detail::split_any(spec, ",;")) {
    const std::string token = detail::trim(raw);
    if (token.empty()) throw Error(ErrorCode::parse, "empty token in objective '" + spec + "'");
    const auto colon = token.find(':');
    if (colon != std::string::npos) {
      pending.push_back({detail::trim(token.substr(0, colon)), {}});
      const std::string rest = detail::trim(token.substr(colon + 1));
      if (rest.empty()) throw Error(ErrorCode::parse, "missing argument in '" + token + "'");
      pending.back().args.push_back(detail::parse_double(rest));
    } else {
      if (pending.empty()) throw Error(ErrorCode::parse, "objective must start with name:");
      pending.back().args.push_back(detail::parse_double(token));
    }
  }
  if (pending.empty()) throw Error(ErrorCode::parse, "empty objective");

  std::vector<ScalarObjective> pieces;
  for (const auto& p : pending) {
    auto need = [&](std::size_t n) {
      if (p.args.size() != n) {
        throw Error(ErrorCode::parse, p.family + ": expected " + std::to_string(n) +
                                          " argument(s), got " + std::to_string(p.args.size()));
      }
    };
    if (p.family == "abs") {
      need(1);
      pieces.push_back(objective_abs_deviation(p.args[0]));
    } else if (p.family == "ind") {
      need(2);
      pieces.push_back(objective_indicator_interval(p.args[0], p.args[1]));
    } else if (p.family == "quad") {
      need(2);
      pieces.push_back(objective_quadratic(p.args[0], p.args[1]));
    } else {
      throw Error(ErrorCode::parse, "unknown objective family '" + p.family +
                                        "' (expected abs|ind|quad)");
    }
  }
  return ConvexObjective(std::move(pieces));
}

} // namespace bregenv
