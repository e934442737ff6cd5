#ifndef BREGENV_OBJECTIVE_HPP
#define BREGENV_OBJECTIVE_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bregenv {

/// Closed interval [lo, hi] of the extended real line.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double t) const noexcept { return lo <= t && t <= hi; }
  /// Distance from zero to the interval; 0 when it contains zero.
  double distance_to_zero() const noexcept;
};

enum class ObjectiveFamily { abs_deviation, indicator_interval, quadratic, custom };

/// One coordinate of a separable proper lsc convex function.
///
/// Outside its domain the subgradient evaluator returns the monotone
/// extension of the subdifferential: {-inf} left of the domain and {+inf}
/// right of it, so root finders can treat the inclusion as a monotone
/// set-valued map on the whole line.
class ScalarObjective {
public:
  struct Functions {
    std::function<double(double)> value;          // may return +inf
    std::function<Interval(double)> subgradient;  // [g_lo, g_hi] inside the domain
    std::function<double(double)> curvature;      // theta'' on smooth pieces (optional)
  };

  ScalarObjective(std::string name, ObjectiveFamily family, std::vector<double> params,
                  Functions fns, Interval domain, std::vector<double> kinks,
                  std::optional<Interval> known_argmin, std::optional<double> known_infimum);

  const std::string& name() const noexcept { return name_; }
  ObjectiveFamily family() const noexcept { return family_; }
  const std::vector<double>& params() const noexcept { return params_; }
  /// Multiplier applied to the base family (1 unless produced by scaled()).
  double scale() const noexcept { return scale_; }

  double value(double t) const;
  Interval subgradient(double t) const;
  bool has_curvature() const noexcept { return static_cast<bool>(fns_.curvature); }
  double curvature(double t) const;

  const Interval& domain() const noexcept { return domain_; }
  /// Points where the subdifferential is not a singleton.
  const std::vector<double>& kinks() const noexcept { return kinks_; }
  const std::optional<Interval>& known_argmin() const noexcept { return known_argmin_; }
  const std::optional<double>& known_infimum() const noexcept { return known_infimum_; }

  /// s * theta for s > 0.
  ScalarObjective scaled(double s) const;

private:
  std::string name_;
  ObjectiveFamily family_;
  std::vector<double> params_;
  double scale_ = 1.0;
  Functions fns_;
  Interval domain_;
  std::vector<double> kinks_;
  std::optional<Interval> known_argmin_;
  std::optional<double> known_infimum_;
};

/// theta(t) = |t - c|.
ScalarObjective objective_abs_deviation(double c);
/// Indicator of [a, b]; throws Error{invalid_set} when a > b.
ScalarObjective objective_indicator_interval(double a, double b);
/// theta(t) = a/2 (t - c)^2; throws Error{convexity} when a < 0.
ScalarObjective objective_quadratic(double a, double c);

/// Separable objective sum_j theta_j(x_j). A single piece is broadcast to
/// every coordinate.
class ConvexObjective {
public:
  explicit ConvexObjective(ScalarObjective piece);
  explicit ConvexObjective(std::vector<ScalarObjective> pieces);

  /// Number of explicit pieces (1 when broadcast).
  std::size_t pieces() const noexcept { return pieces_.size(); }
  bool broadcast() const noexcept { return pieces_.size() == 1; }
  /// Throws Error{dimension} when the piece count is neither 1 nor n.
  void check_dimension(std::size_t n) const;
  const ScalarObjective& piece(std::size_t j) const;

  double value(std::span<const double> x) const;
  ConvexObjective scaled(double s) const;
  std::string name() const;

private:
  std::vector<ScalarObjective> pieces_;
};

/// Grammar: "abs:<c>", "ind:<a>,<b>", "quad:<a>,<c>"; several pieces may be
/// joined with ',' or ';' for multi-dimensional problems, e.g.
/// "abs:0.5,ind:0,1".
ConvexObjective parse_objective(const std::string& spec);

} // namespace bregenv

#endif
