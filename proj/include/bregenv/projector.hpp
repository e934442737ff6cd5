#ifndef BREGENV_PROJECTOR_HPP
#define BREGENV_PROJECTOR_HPP

#include <span>
#include <string>
#include <vector>

#include "bregenv/legendre.hpp"
#include "bregenv/objective.hpp"

namespace bregenv {

enum class SetKind { box, hyperplane };

/// A box prod_j [lower_j, upper_j] or a hyperplane {x : <normal, x> = offset}.
struct ProjectionSpec {
  SetKind kind = SetKind::box;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> normal;
  double offset = 0.0;

  std::size_t dimension() const noexcept {
    return kind == SetKind::box ? lower.size() : normal.size();
  }
  /// Throws Error{invalid_set} for lower > upper or a zero normal.
  void validate() const;
  bool contains(std::span<const double> x, double tol = 0.0) const;
  std::string describe() const;
};

ProjectionSpec make_box(std::vector<double> lower, std::vector<double> upper);
ProjectionSpec make_hyperplane(std::vector<double> normal, double offset);

/// "box:<lo1>,<hi1>;<lo2>,<hi2>;..." or "hyp:<a1>,<a2>,...=<b>".
ProjectionSpec parse_set(const std::string& text);

/// argmin_{p in C} D_f(p, y). Throws Error{infeasible} when C ∩ U is empty,
/// Error{domain} when y is outside U.
std::vector<double> left_project(const LegendreKernel& k, const ProjectionSpec& spec,
                                 std::span<const double> y, double tol = 1e-10);

/// argmin_{p in C} D_f(x, p). Same errors as left_project.
std::vector<double> right_project(const LegendreKernel& k, const ProjectionSpec& spec,
                                  std::span<const double> x, double tol = 1e-10);

/// Euclidean projection.
std::vector<double> orthogonal_project(const ProjectionSpec& spec, std::span<const double> x);

/// <f'(y) - f'(p), z - p>; nonpositive for all z in C when p is the left projection.
double left_variational_gap(const LegendreKernel& k, std::span<const double> y,
                            std::span<const double> p, std::span<const double> z);

/// <f''(p) (x - p), z - p>; nonpositive for all z in C when p is the right projection.
double right_variational_gap(const LegendreKernel& k, std::span<const double> x,
                             std::span<const double> p, std::span<const double> z);

} // namespace bregenv

#endif
