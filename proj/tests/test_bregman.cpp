#include <cmath>
#include <random>
#include <vector>

#include "bregenv/bregman.hpp"
#include "bregenv/error.hpp"
#include "doctest.h"

using namespace bregenv;
using doctest::Approx;

TEST_CASE("distance values") {
  CHECK(bregman_distance(kernel_energy(), 1.0, 2.0) == Approx(0.5));
  const auto bs = kernel_boltzmann_shannon();
  CHECK(bregman_distance(bs, std::vector<double>{1, 2}, std::vector<double>{1, 2}) == 0.0);
  const double x = 0.1 * std::exp(1.0);
  CHECK(bregman_distance(bs, x, 0.1) == Approx(x * std::log(x / 0.1) - x + 0.1).epsilon(1e-14));
  CHECK(bregman_distance(bs, x, 0.1) == Approx(0.1).epsilon(1e-12));
  // Boundary in the first slot is allowed, in the second it is not.
  CHECK(bregman_distance(bs, 0.0, 0.5) == Approx(0.5));
  CHECK(std::isinf(bregman_distance(bs, 0.5, 0.0)));
  CHECK(std::isinf(bregman_distance(bs, -1.0, 0.5)));
  CHECK_THROWS_AS(bregman_distance(bs, std::vector<double>{1}, std::vector<double>{1, 2}), Error);
}

TEST_CASE("distance is nonnegative and vanishes on the diagonal") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  for (const char* name : {"energy", "bs", "fd"}) {
    const auto k = kernel_by_name(name);
    for (int i = 0; i < 200; ++i) {
      const double x = u(rng), y = u(rng);
      CHECK(bregman_distance(k, x, y) >= 0.0);
      CHECK(bregman_distance(k, y, y) == Approx(0.0));
    }
  }
}

TEST_CASE("four-point identity") {
  const auto e = kernel_energy();
  const std::vector<double> x1{1}, x2{0}, y1{2}, y2{-1};
  CHECK(four_point_gap(e, x1, x2, y1, y2) == Approx(3.0));
  CHECK(four_point_inner(e, x1, x2, y1, y2) == Approx(3.0));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  for (const char* name : {"energy", "bs", "fd"}) {
    const auto k = kernel_by_name(name);
    for (int i = 0; i < 100; ++i) {
      const std::vector<double> a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)},
          d{u(rng), u(rng)};
      CHECK(std::abs(four_point_gap(k, a, b, c, d) - four_point_inner(k, a, b, c, d)) < 1e-12);
      CHECK(four_point_gap(k, a, a, c, d) == Approx(0.0).epsilon(1e-12));
      CHECK(four_point_gap(k, a, b, c, c) == Approx(0.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("coercivity certificates") {
  const auto c1 = coercivity_certificate(kernel_energy(), parse_objective("abs:0.5"), Side::left);
  CHECK(c1.c);
  CHECK(c1.guaranteed());
  const auto c2 = coercivity_certificate(kernel_fermi_dirac(), parse_objective("abs:0.5"), Side::left);
  CHECK(c2.a);
  const auto c3 = coercivity_certificate(kernel_boltzmann_shannon(), parse_objective("ind:1,2"), Side::left);
  CHECK(c3.a);
  CHECK(c3.describe().find('a') != std::string::npos);
  const auto c4 = coercivity_certificate(kernel_energy(), parse_objective("quad:0,0"), Side::right);
  CHECK(c4.b);
  CHECK_FALSE(c4.a);
  try {
    coercivity_certificate(kernel_fermi_dirac(), parse_objective("ind:1,2"), Side::left);
    FAIL("expected infeasible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::infeasible);
  }
}

TEST_CASE("feasible interval") {
  const Interval i = feasible_interval(kernel_boltzmann_shannon(), objective_indicator_interval(-1, 2));
  CHECK(i.lo == 0.0);
  CHECK(i.hi == 2.0);
  CHECK_THROWS_AS(feasible_interval(kernel_boltzmann_shannon(), objective_indicator_interval(-2, -1)),
                  Error);
}

TEST_CASE("distance grows along rays in the first argument") {
  for (const char* name : {"energy", "bs"}) {
    const auto k = kernel_by_name(name);
    double prev = 0.0;
    for (double x = 2.0; x < 1e4; x *= 2) {
      const double d = bregman_distance(k, x, 0.7);
      CHECK(d > prev);
      prev = d;
    }
  }
}

TEST_CASE("side names") {
  CHECK(parse_side("left") == Side::left);
  CHECK(std::string(to_string(Side::right)) == "right");
  CHECK_THROWS_AS(parse_side("up"), Error);
}
