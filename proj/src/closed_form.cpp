#include "bregenv/closed_form.hpp"

#include <cmath>

namespace bregenv {

namespace {

bool valid_gamma(double gamma) { return gamma > 0.0 && std::isfinite(gamma); }

double logit(double t) { return std::log(t) - std::log1p(-t); }

double logistic(double s) {
  if (s >= 0.0) return 1.0 / (1.0 + std::exp(-s));
  const double e = std::exp(s);
  return e / (1.0 + e);
}

double xlog_ratio(double x, double y) { return x == 0.0 ? 0.0 : x * std::log(x / y); }

double fd_divergence(double x, double y) { return xlog_ratio(x, y) + xlog_ratio(1.0 - x, 1.0 - y); }

bool in_unit(double t) { return t > 0.0 && t < 1.0; }

} // namespace

std::optional<double> left_prox_closed_form_abs(KernelFamily family, double c, double gamma,
                                                double y) {
  if (!valid_gamma(gamma) || !std::isfinite(c)) return std::nullopt;
  switch (family) {
  case KernelFamily::energy:
    if (!std::isfinite(y)) return std::nullopt;
    if (y < c - gamma) return y + gamma;
    if (y > c + gamma) return y - gamma;
    return c;
  case KernelFamily::boltzmann_shannon: {
    if (!(c > 0.0) || !(y > 0.0) || !std::isfinite(y)) return std::nullopt;
    // Compare in log space so that large gamma cannot overflow.
    const double ly = std::log(y), lc = std::log(c);
    if (ly < lc - gamma) return y * std::exp(gamma);
    if (ly > lc + gamma) return y * std::exp(-gamma);
    return c;
  }
  case KernelFamily::fermi_dirac: {
    if (!in_unit(c) || !in_unit(y)) return std::nullopt;
    const double z = logit(y), zc = logit(c);
    if (z + gamma < zc) return logistic(z + gamma);
    if (z - gamma > zc) return logistic(z - gamma);
    return c;
  }
  case KernelFamily::custom:
    break;
  }
  return std::nullopt;
}

std::optional<double> right_prox_closed_form_abs(KernelFamily family, double c, double gamma,
                                                 double x) {
  if (!valid_gamma(gamma) || !std::isfinite(c)) return std::nullopt;
  switch (family) {
  case KernelFamily::energy:
    return left_prox_closed_form_abs(family, c, gamma, x);
  case KernelFamily::boltzmann_shannon:
    if (!(c > 0.0) || !(x > 0.0) || !std::isfinite(x)) return std::nullopt;
    // The lower branch x/(1-gamma) exists only for gamma < 1.
    if (gamma < 1.0 && x < c * (1.0 - gamma)) return x / (1.0 - gamma);
    if (x > c * (1.0 + gamma)) return x / (1.0 + gamma);
    return c;
  case KernelFamily::fermi_dirac: {
    if (!in_unit(c) || !in_unit(x)) return std::nullopt;
    const double spread = gamma * c * (1.0 - c);
    if (x < c - spread) {
      // Positive root of gamma p^2 + (1 - gamma) p - x = 0.
      const double q = 1.0 - gamma;
      const double disc = std::sqrt(q * q + 4.0 * gamma * x);
      return q >= 0.0 ? 2.0 * x / (q + disc) : (-q + disc) / (2.0 * gamma);
    }
    if (x > c + spread) {
      // Smaller root of gamma p^2 - (1 + gamma) p + x = 0.
      const double q = 1.0 + gamma;
      return 2.0 * x / (q + std::sqrt(q * q - 4.0 * gamma * x));
    }
    return c;
  }
  case KernelFamily::custom:
    break;
  }
  return std::nullopt;
}

std::optional<double> left_envelope_closed_form_abs(KernelFamily family, double c,
                                                    double gamma, double y) {
  if (!valid_gamma(gamma) || !std::isfinite(c)) return std::nullopt;
  switch (family) {
  case KernelFamily::energy: {
    if (!std::isfinite(y)) return std::nullopt;
    const double d = std::abs(y - c);
    if (d <= gamma) return d * d / (2.0 * gamma);
    return d - 0.5 * gamma;
  }
  case KernelFamily::boltzmann_shannon: {
    if (!(c > 0.0) || !(y > 0.0) || !std::isfinite(y)) return std::nullopt;
    const double ly = std::log(y), lc = std::log(c);
    if (ly < lc - gamma) return c - y * std::expm1(gamma) / gamma;
    if (ly > lc + gamma) return -y * std::expm1(-gamma) / gamma - c;
    return (xlog_ratio(c, y) - c + y) / gamma;
  }
  case KernelFamily::fermi_dirac: {
    if (!in_unit(c) || !in_unit(y)) return std::nullopt;
    const double z = logit(y), zc = logit(c);
    if (z + gamma < zc) return c - std::log1p(y * std::expm1(gamma)) / gamma;
    if (z - gamma > zc) return -c - std::log1p(y * std::expm1(-gamma)) / gamma;
    return fd_divergence(c, y) / gamma;
  }
  case KernelFamily::custom:
    break;
  }
  return std::nullopt;
}

std::optional<double> right_envelope_closed_form_abs(KernelFamily family, double c,
                                                     double gamma, double x) {
  if (!valid_gamma(gamma) || !std::isfinite(c)) return std::nullopt;
  switch (family) {
  case KernelFamily::energy:
    return left_envelope_closed_form_abs(family, c, gamma, x);
  case KernelFamily::boltzmann_shannon:
    if (!(c > 0.0) || !(x > 0.0) || !std::isfinite(x)) return std::nullopt;
    if (gamma < 1.0 && x < c * (1.0 - gamma)) return c + x * std::log1p(-gamma) / gamma;
    if (x > c * (1.0 + gamma)) return x * std::log1p(gamma) / gamma - c;
    return (xlog_ratio(x, c) - x + c) / gamma;
  case KernelFamily::fermi_dirac: {
    const auto p = right_prox_closed_form_abs(family, c, gamma, x);
    if (!p) return std::nullopt;
    return std::abs(*p - c) + fd_divergence(x, *p) / gamma;
  }
  case KernelFamily::custom:
    break;
  }
  return std::nullopt;
}

} // namespace bregenv
