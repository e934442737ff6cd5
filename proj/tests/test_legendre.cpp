#include <cmath>
#include <vector>

#include "bregenv/error.hpp"
#include "bregenv/legendre.hpp"
#include "doctest.h"

using namespace bregenv;
using doctest::Approx;

TEST_CASE("energy kernel") {
  const auto k = kernel_energy();
  CHECK(k.grad(3.0) == 3.0);
  CHECK(k.conj(2.0) == 2.0);
  CHECK(k.hess(-5.0) == 1.0);
  CHECK(k.value(4.0) == 8.0);
  CHECK(k.traits().supercoercive);
}

TEST_CASE("Boltzmann-Shannon kernel") {
  const auto k = kernel_boltzmann_shannon();
  CHECK(k.value(1.0) == Approx(-1.0));
  CHECK(k.value(0.0) == 0.0);
  CHECK(k.conj_grad(k.grad(0.1)) == Approx(0.1).epsilon(1e-15));
  CHECK(k.hess(0.25) == Approx(4.0));
  CHECK_THROWS_AS(k.value(-1.0), Error);
  CHECK_THROWS_AS(k.grad(0.0), Error);
  try {
    k.hess(-0.5);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::domain);
  }
}

TEST_CASE("Fermi-Dirac kernel") {
  const auto k = kernel_fermi_dirac();
  CHECK(k.value(0.5) == Approx(std::log(0.5)));
  CHECK(k.grad(0.5) == Approx(0.0));
  CHECK(k.hess(0.5) == Approx(4.0));
  CHECK(k.value(0.0) == 0.0);
  CHECK(k.value(1.0) == 0.0);
  CHECK_THROWS_AS(k.grad(1.0), Error);
  CHECK_THROWS_AS(k.value(1.5), Error);
  CHECK(k.conj_grad(k.grad(0.9)) == Approx(0.9).epsilon(1e-14));
}

TEST_CASE("interior and domain membership") {
  CHECK(kernel_energy().in_interior(std::vector<double>{5.0, -5.0}));
  CHECK_FALSE(kernel_fermi_dirac().in_interior(std::vector<double>{0.0}));
  CHECK(kernel_fermi_dirac().in_domain(std::vector<double>{0.0, 1.0}));
  CHECK(kernel_boltzmann_shannon().in_interior(std::vector<double>{0.1, 2.0}));
  CHECK_FALSE(kernel_boltzmann_shannon().in_domain(std::vector<double>{-0.1}));
  CHECK_FALSE(kernel_energy().in_interior(std::nan("")));
}

TEST_CASE("Fenchel-Young equality and gradient round trip") {
  for (const char* name : {"energy", "bs", "fd"}) {
    const auto k = kernel_by_name(name);
    for (double x : {0.05, 0.2, 0.5, 0.7, 0.95}) {
      CAPTURE(name);
      CAPTURE(x);
      const double s = k.grad(x);
      CHECK(k.value(x) + k.conj(s) == Approx(x * s).epsilon(1e-12));
      CHECK(k.conj_grad(s) == Approx(x).epsilon(1e-13));
    }
  }
}

TEST_CASE("third derivative matches differences of the second") {
  for (const char* name : {"energy", "bs", "fd"}) {
    const auto k = kernel_by_name(name);
    REQUIRE(k.has_third());
    const double x = 0.3, h = 1e-6;
    CHECK(k.third(x) == Approx((k.hess(x + h) - k.hess(x - h)) / (2 * h)).epsilon(1e-6));
  }
}

TEST_CASE("kernel lookup") {
  CHECK(kernel_by_name("boltzmann_shannon").family() == KernelFamily::boltzmann_shannon);
  CHECK(kernel_by_name("fd").family() == KernelFamily::fermi_dirac);
  CHECK_THROWS_AS(kernel_by_name("tsallis"), Error);
}

TEST_CASE("separable value sums the coordinates") {
  const auto k = kernel_boltzmann_shannon();
  const std::vector<double> x{1.0, 2.0};
  CHECK(k.value(x) == Approx(-1.0 + 2.0 * std::log(2.0) - 2.0));
}
