#ifndef BREGENV_PROX_HPP
#define BREGENV_PROX_HPP

#include <span>
#include <vector>

#include "bregenv/bregman.hpp"
#include "bregenv/legendre.hpp"
#include "bregenv/objective.hpp"

namespace bregenv {

enum class ProxBranch { closed_form, bisection, newton_fallback };

const char* to_string(ProxBranch branch) noexcept;

struct ProxOptions {
  double tol = 1e-10;       // residual tolerance used when the bracket cannot collapse
  int max_iter = 200;       // bisection/Newton steps per coordinate
  bool allow_closed_form = true;
};

struct ProxOutcome {
  std::vector<double> point;
  double envelope_value = 0.0;  // theta(point) + D-term / gamma
  double residual = 0.0;        // max over coordinates of dist(0, inclusion set)
  int iterations = 0;           // residual evaluations, summed over coordinates
  ProxBranch branch = ProxBranch::closed_form;
};

/// argmin_x theta(x) + D_f(x, y) / gamma.
/// Throws Error{parameter} for gamma <= 0, Error{domain} when y is not in U,
/// Error{infeasible} when U ∩ dom theta is empty.
ProxOutcome left_prox(const LegendreKernel& k, const ConvexObjective& th, double gamma,
                      std::span<const double> y, const ProxOptions& opts = {});

/// argmin_y theta(y) + D_f(x, y) / gamma. Same errors as left_prox.
ProxOutcome right_prox(const LegendreKernel& k, const ConvexObjective& th, double gamma,
                       std::span<const double> x, const ProxOptions& opts = {});

ProxOutcome prox(Side side, const LegendreKernel& k, const ConvexObjective& th, double gamma,
                 std::span<const double> point, const ProxOptions& opts = {});

struct ProximalPointResult {
  std::vector<std::vector<double>> trajectory;  // x0, x1, ..., final
  std::vector<double> point;
  double step_residual = 0.0;  // |prox(x) - x|_inf at the last iterate
  int iterations = 0;
  bool converged = false;
  CoercivityCertificate certificate;
};

/// Iterates x <- left_prox(gamma theta)(x) until the sup-norm step is <= tol
/// or max_iter is reached (converged = false then).
ProximalPointResult proximal_point_solve(const LegendreKernel& k, const ConvexObjective& th,
                                         double gamma, std::span<const double> x0,
                                         int max_iter = 1000, double tol = 1e-12,
                                         const ProxOptions& opts = {});

} // namespace bregenv

#endif
