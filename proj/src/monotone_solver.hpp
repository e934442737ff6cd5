#ifndef BREGENV_SRC_MONOTONE_SOLVER_HPP
#define BREGENV_SRC_MONOTONE_SOLVER_HPP

#include <functional>
#include <vector>

#include "bregenv/objective.hpp"

namespace bregenv::detail {

/// Find t in (lower, upper) with 0 in R(t), where R is a nondecreasing
/// set-valued map given by its interval at each point.
struct InclusionProblem {
  std::function<Interval(double)> residual;
  /// Derivative of R where R is single-valued and smooth; empty disables Newton.
  std::function<double(double)> slope;
  double lower = 0.0;
  double upper = 0.0;
  /// Candidate nonsmooth points, tested exactly before bisecting.
  std::vector<double> kinks;
  double start = 0.0;
};

struct InclusionResult {
  double t = 0.0;
  double residual = 0.0;  // distance of 0 to R(t)
  int iterations = 0;
  bool newton_used = false;
  bool at_boundary = false;  // no root inside; t is the boundary-adjacent point
};

/// Bracketing bisection with safeguarded Newton steps. With allow_boundary
/// the solver returns the point next to the boundary when R keeps its sign
/// all the way there (the infimum is only approached in the limit);
/// otherwise that case throws Error{solver_failure}.
InclusionResult solve_inclusion(const InclusionProblem& problem, double tol, int max_iter,
                                bool allow_boundary = false);

} // namespace bregenv::detail

#endif
