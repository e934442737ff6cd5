#ifndef BREGENV_SRC_PROX_DETAIL_HPP
#define BREGENV_SRC_PROX_DETAIL_HPP

#include "bregenv/prox.hpp"

namespace bregenv::detail {

struct CoordinateProx {
  double point = 0.0;
  double residual = 0.0;
  int iterations = 0;
  ProxBranch branch = ProxBranch::closed_form;
  bool at_boundary = false;
};

void check_gamma(double gamma);

/// Scalar left prox; y must lie in U.
CoordinateProx left_prox_coord(const LegendreKernel& k, const ScalarObjective& piece,
                               double gamma, double y, const ProxOptions& opts);

/// Scalar right prox. x must lie in U unless allow_boundary is set, in which
/// case x may sit on a finite endpoint of dom f and the returned point may be
/// the boundary-adjacent float when the infimum is not attained in U.
CoordinateProx right_prox_coord(const LegendreKernel& k, const ScalarObjective& piece,
                                double gamma, double x, const ProxOptions& opts,
                                bool allow_boundary = false);

} // namespace bregenv::detail

#endif
