#ifndef BREGENV_ENVELOPE_HPP
#define BREGENV_ENVELOPE_HPP

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bregenv/prox.hpp"

namespace bregenv {

struct EnvelopeSample {
  std::vector<double> point;
  double gamma = 0.0;
  Side side = Side::left;
  double value = 0.0;                           // +inf outside the envelope's domain
  std::optional<std::vector<double>> gradient;  // only on U and when requested
  std::vector<double> prox_point;               // empty when value is +inf
  ProxBranch branch = ProxBranch::closed_form;
  double residual = 0.0;
  int iterations = 0;
  std::string note;  // why value is +inf or the gradient is missing
};

/// inf_x theta(x) + D_f(x, y) / gamma, computed through the left prox.
/// Returns +inf (not an error) when y is outside U.
EnvelopeSample left_envelope(const LegendreKernel& k, const ConvexObjective& th, double gamma,
                             std::span<const double> y, bool want_gradient = false,
                             const ProxOptions& opts = {});

/// inf_y theta(y) + D_f(x, y) / gamma. Finite on dom f; +inf outside it.
/// The gradient needs x in U.
EnvelopeSample right_envelope(const LegendreKernel& k, const ConvexObjective& th,
                              double gamma, std::span<const double> x,
                              bool want_gradient = false, const ProxOptions& opts = {});

EnvelopeSample envelope(Side side, const LegendreKernel& k, const ConvexObjective& th,
                        double gamma, std::span<const double> point, bool want_gradient = false,
                        const ProxOptions& opts = {});

/// (env_mu(gamma theta)(point), gamma * env_{gamma mu}(theta)(point)).
std::pair<double, double> scaling_law_check(const LegendreKernel& k, const ConvexObjective& th,
                                            double gamma, double mu,
                                            std::span<const double> point, Side side,
                                            const ProxOptions& opts = {});

/// Left: |gamma benv(grad f*(y*)) - (f*(y*) - (gamma theta + f)*(y*))| with y* dual.
/// Right: |gamma fenv(x) - (f(x) - (gamma theta o grad f* + f*)*(x))| with x in U.
/// The conjugates are computed numerically by the oracle.
double conjugate_identity_gap(const LegendreKernel& k, const ConvexObjective& th, double gamma,
                              std::span<const double> point, Side side,
                              const ProxOptions& opts = {});

/// Moreau envelope (energy kernel).
double classical_envelope(const ConvexObjective& th, double gamma, std::span<const double> y,
                          const ProxOptions& opts = {});

} // namespace bregenv

#endif
