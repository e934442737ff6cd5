#ifndef BREGENV_BREGMAN_HPP
#define BREGENV_BREGMAN_HPP

#include <span>
#include <string>

#include "bregenv/legendre.hpp"
#include "bregenv/objective.hpp"

namespace bregenv {

enum class Side { left, right };

const char* to_string(Side side) noexcept;
Side parse_side(const std::string& s);

/// D_f(x, y) = f(x) - f(y) - f'(y)(x - y) for one coordinate. Returns +inf
/// when y is outside U or x outside dom f.
double bregman_distance(const LegendreKernel& k, double x, double y);

/// Sum of the coordinate distances. Throws Error{dimension} on size mismatch.
double bregman_distance(const LegendreKernel& k, std::span<const double> x,
                        std::span<const double> y);

/// D(x1,y2) + D(x2,y1) - D(x1,y1) - D(x2,y2), which equals
/// <f'(y1) - f'(y2), x1 - x2> for y1, y2 in U.
double four_point_gap(const LegendreKernel& k, std::span<const double> x1,
                      std::span<const double> x2, std::span<const double> y1,
                      std::span<const double> y2);

/// Right-hand side of the four-point identity.
double four_point_inner(const LegendreKernel& k, std::span<const double> x1,
                        std::span<const double> x2, std::span<const double> y1,
                        std::span<const double> y2);

/// Which sufficient conditions for coercivity of the prox objective hold:
///   (a) U ∩ dom theta bounded, (b) inf theta(U) > -inf,
///   (c) f supercoercive (left side), (d) D_f(x, .) supercoercive (right side).
struct CoercivityCertificate {
  Side side = Side::left;
  bool a = false;
  bool b = false;
  bool c = false;
  bool d = false;

  /// True when a condition relevant to `side` holds; otherwise uniqueness
  /// of the prox is best-effort.
  bool guaranteed() const noexcept;
  std::string describe() const;
};

/// Throws Error{infeasible} when U ∩ dom theta is empty in some coordinate.
CoercivityCertificate coercivity_certificate(const LegendreKernel& k,
                                             const ConvexObjective& th, Side side);

/// U ∩ dom theta_j for one coordinate as [lo, hi] (endpoints that come from U
/// are open). Throws Error{infeasible} when empty.
Interval feasible_interval(const LegendreKernel& k, const ScalarObjective& piece);

} // namespace bregenv

#endif
