#ifndef BREGENV_LEGENDRE_HPP
#define BREGENV_LEGENDRE_HPP

#include <functional>
#include <span>
#include <string>

namespace bregenv {

enum class KernelFamily { energy, boltzmann_shannon, fermi_dirac, custom };

/// Scalar evaluators of a separable Legendre function. The multi-dimensional
/// kernel is f(x) = sum_j phi(x_j) with the same phi in every coordinate.
struct ScalarKernelFunctions {
  std::function<double(double)> value;      // phi, finite on the closed domain
  std::function<double(double)> grad;       // phi'
  std::function<double(double)> hess;       // phi'' > 0 on the interior
  std::function<double(double)> third;      // phi''' (optional, enables Newton on right prox)
  std::function<double(double)> conj;       // phi*
  std::function<double(double)> conj_grad;  // (phi*)' = (phi')^{-1}
};

struct KernelTraits {
  double dom_lower = 0.0;   // closed-domain endpoints of dom phi (may be infinite)
  double dom_upper = 0.0;
  double int_lower = 0.0;   // open endpoints of U = int dom phi
  double int_upper = 0.0;
  bool supercoercive = false;        // f(x)/|x| -> inf
  bool right_supercoercive = false;  // D_f(x, .) supercoercive for every x in U
  bool assumptions_verified = false; // Legendre and the standing regularity conditions hold (built-ins only)
};

/// A coordinate-separable Legendre kernel. Immutable after construction.
///
/// Scalar evaluators throw Error{domain} outside their domain, except that
/// value() returns the finite limit at a closed finite boundary point
/// (0 ln 0 := 0).
class LegendreKernel {
public:
  LegendreKernel(std::string name, KernelFamily family, KernelTraits traits,
                 ScalarKernelFunctions fns);

  const std::string& name() const noexcept { return name_; }
  KernelFamily family() const noexcept { return family_; }
  const KernelTraits& traits() const noexcept { return traits_; }

  double value(double t) const;
  double grad(double t) const;
  double hess(double t) const;
  bool has_third() const noexcept { return static_cast<bool>(fns_.third); }
  double third(double t) const;
  double conj(double s) const;
  double conj_grad(double s) const;

  bool in_domain(double t) const noexcept;
  bool in_interior(double t) const noexcept;
  bool in_interior(std::span<const double> x) const noexcept;
  bool in_domain(std::span<const double> x) const noexcept;

  /// Sum of phi over coordinates.
  double value(std::span<const double> x) const;

private:
  std::string name_;
  KernelFamily family_;
  KernelTraits traits_;
  ScalarKernelFunctions fns_;
};

LegendreKernel kernel_energy();
LegendreKernel kernel_boltzmann_shannon();
LegendreKernel kernel_fermi_dirac();

/// User kernel: the regularity conditions in traits are declared, not checked.
LegendreKernel kernel_custom(std::string name, KernelTraits traits,
                             ScalarKernelFunctions fns);

/// "energy" | "bs" | "fd" (long names are accepted too).
LegendreKernel kernel_by_name(const std::string& name);

bool kernel_in_interior(const LegendreKernel& k, std::span<const double> x);

} // namespace bregenv

#endif
