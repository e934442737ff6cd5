#ifndef BREGENV_ORACLE_HPP
#define BREGENV_ORACLE_HPP

// Brute-force reference computations used to check the solvers. Nothing in
// here depends on the prox or envelope code; built-in kernels and objectives
// are re-evaluated from their formulas in extended precision.

#include <functional>
#include <span>
#include <vector>

#include "bregenv/legendre.hpp"
#include "bregenv/objective.hpp"

namespace bregenv::oracle {

using Real = long double;
using Objective1d = std::function<Real(Real)>;

struct Bracket {
  Real lo = 0.0L;
  Real hi = 0.0L;
};

struct OracleResult {
  Real argmin = 0.0L;
  Real value = 0.0L;
  Bracket bracket;  // the basin bracket golden-section search ran on
  int depth = 0;    // golden-section iterations
};

constexpr Real kDefaultTol = 1e-11L;
constexpr int kDefaultPrescan = 1024;

/// Pre-scan on `prescan` equispaced points to locate the basin (points with
/// non-finite value are ignored), then golden-section search to argument
/// tolerance `tol`. Assumes f is unimodal on the bracket.
/// Throws Error{infeasible} when f is +inf on every scanned point.
OracleResult minimize_1d(const Objective1d& f, Bracket bracket, Real tol = kDefaultTol,
                         int prescan = kDefaultPrescan);

/// sup_x x*ystar - g(x) over the bracket, expanding the bracket while the
/// supremum sits on a finite edge. Throws Error{unbounded} when it keeps
/// increasing after the expansions.
Real numeric_conjugate(const Objective1d& g, Real ystar, Bracket bracket,
                       Real tol = kDefaultTol);

/// Argmin of f over the regular grid lo_j + i*resolution inside `box`.
/// Ties go to the lowest linear index (last coordinate fastest).
std::vector<double> grid_argmin(const std::function<double(std::span<const double>)>& f,
                                 std::span<const Interval> box, double resolution);

// Extended-precision models; +inf outside the respective domains.
Real kernel_value(const LegendreKernel& k, Real t);
Real kernel_conj(const LegendreKernel& k, Real s);
Real kernel_conj_grad(const LegendreKernel& k, Real s);
Real bregman(const LegendreKernel& k, Real x, Real y);
Real objective_value(const ScalarObjective& piece, Real t);

/// A search interval for points of dom f around `center`.
Bracket search_bracket(const LegendreKernel& k, Real center, Real half_width);

/// argmin_x theta(x) + D_f(x, y) / gamma.
OracleResult left_prox_1d(const LegendreKernel& k, const ScalarObjective& piece, Real gamma,
                          Real y);
/// argmin_y theta(y) + D_f(x, y) / gamma.
OracleResult right_prox_1d(const LegendreKernel& k, const ScalarObjective& piece, Real gamma,
                           Real x);

} // namespace bregenv::oracle

#endif
