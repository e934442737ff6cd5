#ifndef BREGENV_ASYMPTOTICS_HPP
#define BREGENV_ASYMPTOTICS_HPP

#include <span>
#include <string>
#include <vector>

#include "bregenv/prox.hpp"

namespace bregenv {

struct SweepRecord {
  double gamma = 0.0;
  Side side = Side::left;
  std::vector<double> point;
  std::vector<double> prox_point;
  double theta_at_prox = 0.0;
  double bregman_term = 0.0;  // D_f(prox, point) on the left, D_f(point, prox) on the right
  double scaled_term = 0.0;   // bregman_term / gamma
  double envelope = 0.0;      // theta_at_prox + scaled_term
  ProxBranch branch = ProxBranch::closed_form;
  double residual = 0.0;
  int iterations = 0;
};

/// One record per gamma (ascending, all > 0). Solver errors are rethrown with
/// the offending gamma in the message.
std::vector<SweepRecord> gamma_sweep(const LegendreKernel& k, const ConvexObjective& th,
                                     std::span<const double> point, Side side,
                                     std::span<const double> gammas,
                                     const ProxOptions& opts = {});

/// n log-spaced values from lo to hi inclusive.
std::vector<double> log_gamma_grid(double lo = 1e-6, double hi = 1e6, int n = 25);

struct LimitTolerances {
  double monotone_slack = 1e-10;
  double limit_gap = 1e-4;
  double scaled_term = 1e-6;
};

struct LimitCheck {
  std::string name;
  bool property = false;  // monotonicity property (decides pass/fail) vs limit diagnostic
  bool passed = false;    // property holds / limit achieved
  bool available = true;  // false when the reference value is unknown
  double gap = 0.0;       // worst violation, or the gap at the extreme gamma
  double tolerance = 0.0;
  bool trend_decreasing = false;  // gaps shrink over the last three samples
};

struct LimitReport {
  std::vector<LimitCheck> checks;
  bool properties_hold = true;
  bool limits_achieved = true;

  const LimitCheck* find(const std::string& name) const;
};

/// Monotonicity properties and limit diagnostics of one (point, side) sweep.
/// The references (theta(point), inf theta, projection onto argmin theta)
/// come from the objective's metadata.
LimitReport limit_report(const LegendreKernel& k, const ConvexObjective& th,
                         std::span<const SweepRecord> records,
                         const LimitTolerances& tol = {});

} // namespace bregenv

#endif
