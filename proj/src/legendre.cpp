#include "bregenv/legendre.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include "bregenv/error.hpp"

namespace bregenv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void domain_error(const std::string& kernel, const char* what, double t) {
  throw Error(ErrorCode::domain,
              kernel + ": " + what + " evaluated outside its domain at t=" +
                  std::to_string(t));
}

// t ln t with the convention 0 ln 0 = 0.
double xlogx(double t) { return t == 0.0 ? 0.0 : t * std::log(t); }

double logistic(double s) {
  if (s >= 0.0) {
    return 1.0 / (1.0 + std::exp(-s));
  }
  const double e = std::exp(s);
  return e / (1.0 + e);
}

double softplus(double s) {
  if (s > 0.0) {
    return s + std::log1p(std::exp(-s));
  }
  return std::log1p(std::exp(s));
}

} // namespace

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
  case ErrorCode::parameter: return "parameter";
  case ErrorCode::domain: return "domain";
  case ErrorCode::dimension: return "dimension";
  case ErrorCode::infeasible: return "infeasible";
  case ErrorCode::invalid_set: return "invalid_set";
  case ErrorCode::convexity: return "convexity";
  case ErrorCode::solver_failure: return "solver_failure";
  case ErrorCode::not_converged: return "not_converged";
  case ErrorCode::unbounded: return "unbounded";
  case ErrorCode::parse: return "parse";
  case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

LegendreKernel::LegendreKernel(std::string name, KernelFamily family,
                               KernelTraits traits, ScalarKernelFunctions fns)
    : name_(std::move(name)), family_(family), traits_(traits), fns_(std::move(fns)) {
  if (!fns_.value || !fns_.grad || !fns_.hess || !fns_.conj || !fns_.conj_grad) {
    throw Error(ErrorCode::parameter, name_ + ": kernel is missing a scalar evaluator");
  }
  if (!(traits_.int_lower < traits_.int_upper) || traits_.dom_lower > traits_.int_lower ||
      traits_.dom_upper < traits_.int_upper) {
    throw Error(ErrorCode::parameter, name_ + ": inconsistent domain endpoints");
  }
}

bool LegendreKernel::in_domain(double t) const noexcept {
  return t >= traits_.dom_lower && t <= traits_.dom_upper && !std::isnan(t);
}

bool LegendreKernel::in_interior(double t) const noexcept {
  return t > traits_.int_lower && t < traits_.int_upper;
}

bool LegendreKernel::in_interior(std::span<const double> x) const noexcept {
  for (double t : x) {
    if (!in_interior(t)) return false;
  }
  return true;
}

bool LegendreKernel::in_domain(std::span<const double> x) const noexcept {
  for (double t : x) {
    if (!in_domain(t)) return false;
  }
  return true;
}

double LegendreKernel::value(double t) const {
  if (!in_domain(t)) domain_error(name_, "f", t);
  return fns_.value(t);
}

double LegendreKernel::grad(double t) const {
  if (!in_interior(t)) domain_error(name_, "f'", t);
  return fns_.grad(t);
}

double LegendreKernel::hess(double t) const {
  if (!in_interior(t)) domain_error(name_, "f''", t);
  return fns_.hess(t);
}

double LegendreKernel::third(double t) const {
  if (!fns_.third) throw Error(ErrorCode::parameter, name_ + ": no third derivative");
  if (!in_interior(t)) domain_error(name_, "f'''", t);
  return fns_.third(t);
}

double LegendreKernel::conj(double s) const { return fns_.conj(s); }

double LegendreKernel::conj_grad(double s) const { return fns_.conj_grad(s); }

double LegendreKernel::value(std::span<const double> x) const {
  double sum = 0.0;
  for (double t : x) sum += value(t);
  return sum;
}

LegendreKernel kernel_energy() {
  KernelTraits traits{-kInf, kInf, -kInf, kInf, true, true, true};
  ScalarKernelFunctions fns{
      [](double t) { return 0.5 * t * t; },
      [](double t) { return t; },
      [](double) { return 1.0; },
      [](double) { return 0.0; },
      [](double s) { return 0.5 * s * s; },
      [](double s) { return s; },
  };
  return LegendreKernel("energy", KernelFamily::energy, traits, std::move(fns));
}

LegendreKernel kernel_boltzmann_shannon() {
  // D_f(x, .) grows only linearly, so (d) of the coercivity conditions fails.
  KernelTraits traits{0.0, kInf, 0.0, kInf, true, false, true};
  ScalarKernelFunctions fns{
      [](double t) { return xlogx(t) - t; },
      [](double t) { return std::log(t); },
      [](double t) { return 1.0 / t; },
      [](double t) { return -1.0 / (t * t); },
      [](double s) { return std::exp(s); },
      [](double s) { return std::exp(s); },
  };
  return LegendreKernel("bs", KernelFamily::boltzmann_shannon, traits, std::move(fns));
}

LegendreKernel kernel_fermi_dirac() {
  // Bounded domain: supercoercivity holds vacuously on both sides.
  KernelTraits traits{0.0, 1.0, 0.0, 1.0, false, true, true};
  ScalarKernelFunctions fns{
      [](double t) { return xlogx(t) + xlogx(1.0 - t); },
      [](double t) { return std::log(t) - std::log1p(-t); },
      [](double t) { return 1.0 / (t * (1.0 - t)); },
      [](double t) {
        const double q = t * (1.0 - t);
        return -(1.0 - 2.0 * t) / (q * q);
      },
      softplus,
      logistic,
  };
  return LegendreKernel("fd", KernelFamily::fermi_dirac, traits, std::move(fns));
}

LegendreKernel kernel_custom(std::string name, KernelTraits traits,
                             ScalarKernelFunctions fns) {
  traits.assumptions_verified = false;
  return LegendreKernel(std::move(name), KernelFamily::custom, traits, std::move(fns));
}

LegendreKernel kernel_by_name(const std::string& name) {
  if (name == "energy") return kernel_energy();
  if (name == "bs" || name == "boltzmann_shannon" || name == "kl") return kernel_boltzmann_shannon();
  if (name == "fd" || name == "fermi_dirac") return kernel_fermi_dirac();
  throw Error(ErrorCode::parse, "unknown kernel '" + name + "' (expected energy|bs|fd)");
}

bool kernel_in_interior(const LegendreKernel& k, std::span<const double> x) {
  return k.in_interior(x);
}

} // namespace bregenv
