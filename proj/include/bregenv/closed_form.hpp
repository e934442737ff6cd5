#ifndef BREGENV_CLOSED_FORM_HPP
#define BREGENV_CLOSED_FORM_HPP

#include <optional>

#include "bregenv/legendre.hpp"

namespace bregenv {

// Closed-form Bregman proximity operators and envelopes of theta(t) = |t - c|
// under the three built-in kernels. The case analysis solves
// 0 in gamma * d|.-c|(x) + (left/right optimality term) piecewise; for c = 1/2
// the branches reduce to the standard textbook tables.
//
// Every function returns std::nullopt when there is no closed form for the
// (family, c) pair (custom kernel, or c outside U) or when the point is
// outside U; callers then use the numeric solver.

std::optional<double> left_prox_closed_form_abs(KernelFamily family, double c, double gamma,
                                                double y);
std::optional<double> right_prox_closed_form_abs(KernelFamily family, double c, double gamma,
                                                 double x);

std::optional<double> left_envelope_closed_form_abs(KernelFamily family, double c,
                                                    double gamma, double y);
std::optional<double> right_envelope_closed_form_abs(KernelFamily family, double c,
                                                     double gamma, double x);

} // namespace bregenv

#endif
