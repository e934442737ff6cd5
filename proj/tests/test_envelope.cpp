#include <cmath>
#include <vector>

#include "bregenv/envelope.hpp"
#include "bregenv/error.hpp"
#include "doctest.h"

using namespace bregenv;
using doctest::Approx;

namespace {
const ConvexObjective kAbs = parse_objective("abs:0.5");
using V = std::vector<double>;
} // namespace

TEST_CASE("left envelope values") {
  CHECK(left_envelope(kernel_energy(), kAbs, 1, V{0}).value == Approx(0.125));
  CHECK(left_envelope(kernel_energy(), kAbs, 1, V{2}).value == Approx(1.0));
  const auto bs = left_envelope(kernel_boltzmann_shannon(), kAbs, 1, V{0.1});
  CHECK(bs.value == Approx(0.5 + 0.1 * (1 - std::exp(1.0))).epsilon(1e-12));
  CHECK(bs.value == Approx(0.328172).epsilon(1e-6));
  CHECK(bs.prox_point[0] == Approx(0.271828).epsilon(1e-6));
}

TEST_CASE("right envelope values") {
  CHECK(right_envelope(kernel_boltzmann_shannon(), kAbs, 1, V{3}).value ==
        Approx(3 * std::log(2.0) - 0.5));
  CHECK(right_envelope(kernel_fermi_dirac(), kAbs, 1, V{0.5}).value == Approx(0.0));
  CHECK(right_envelope(kernel_energy(), kAbs, 1, V{0}).value == Approx(0.125));
}

TEST_CASE("energy envelopes coincide on both sides") {
  const auto e = kernel_energy();
  for (double y : {-1.5, 0.2, 0.5, 0.9, 2.5}) {
    for (const char* th : {"abs:0.5", "quad:3,1", "ind:0,1"}) {
      const auto o = parse_objective(th);
      CHECK(left_envelope(e, o, 0.7, V{y}).value == Approx(right_envelope(e, o, 0.7, V{y}).value));
      CHECK(left_envelope(e, o, 0.7, V{y}).value == Approx(classical_envelope(o, 0.7, V{y})));
    }
  }
}

TEST_CASE("outside the domain") {
  const auto l = left_envelope(kernel_boltzmann_shannon(), kAbs, 1, V{-1}, true);
  CHECK(std::isinf(l.value));
  CHECK_FALSE(l.gradient);
  CHECK(l.prox_point.empty());
  CHECK_FALSE(l.note.empty());

  const auto r = right_envelope(kernel_fermi_dirac(), kAbs, 1, V{1.5}, true);
  CHECK(std::isinf(r.value));
  CHECK_FALSE(r.gradient);

  // Left envelopes need U; the boundary is outside it.
  CHECK(std::isinf(left_envelope(kernel_boltzmann_shannon(), kAbs, 1, V{0}).value));
}

TEST_CASE("right envelope on the boundary of dom f") {
  const auto r = right_envelope(kernel_boltzmann_shannon(), kAbs, 0.5, V{0}, true);
  CHECK(r.value == Approx(0.5));
  CHECK_FALSE(r.gradient);
  CHECK(r.note.find("boundary") != std::string::npos);
  REQUIRE(r.prox_point.size() == 1);
  CHECK(r.prox_point[0] == 0.0);

  // Large gamma pulls the prox inside U even from the boundary.
  const auto inside = right_envelope(kernel_boltzmann_shannon(), kAbs, 4.0, V{0});
  CHECK(inside.value < 0.5);
  CHECK(inside.value > 0.0);
  CHECK(right_envelope(kernel_fermi_dirac(), kAbs, 0.3, V{1}).value == Approx(0.5));
}

TEST_CASE("gradients") {
  const auto g = left_envelope(kernel_energy(), kAbs, 1, V{0}, true);
  REQUIRE(g.gradient);
  CHECK((*g.gradient)[0] == Approx(-0.5));
  const auto r = right_envelope(kernel_boltzmann_shannon(), kAbs, 1, V{3}, true);
  REQUIRE(r.gradient);
  CHECK((*r.gradient)[0] == Approx(std::log(2.0)));
  CHECK_FALSE(left_envelope(kernel_energy(), kAbs, 1, V{0}).gradient);
}

TEST_CASE("envelope lies below theta and above inf theta") {
  for (const char* name : {"energy", "bs", "fd"}) {
    const auto k = kernel_by_name(name);
    for (Side side : {Side::left, Side::right}) {
      for (double t : {0.05, 0.3, 0.5, 0.8}) {
        for (double g : {0.01, 1.0, 100.0}) {
          const double v = envelope(side, k, kAbs, g, V{t}).value;
          CHECK(v <= std::abs(t - 0.5) + 1e-12);
          CHECK(v >= -1e-12);
        }
      }
    }
  }
}

TEST_CASE("scaling law") {
  const auto [a, b] = scaling_law_check(kernel_energy(), kAbs, 2, 0.5, V{0}, Side::left);
  CHECK(a == Approx(0.25));
  CHECK(b == Approx(0.25));
  const auto [c, d] = scaling_law_check(kernel_boltzmann_shannon(), kAbs, 3, 1, V{0.2}, Side::left);
  CHECK(std::abs(c - d) <= 1e-10);
  const auto [e, f] = scaling_law_check(kernel_fermi_dirac(), kAbs, 1, 0.7, V{0.9}, Side::right);
  CHECK(e == Approx(f));
}

TEST_CASE("conjugate identity") {
  CHECK(conjugate_identity_gap(kernel_energy(), kAbs, 1, V{0}, Side::left) <= 1e-6);
  CHECK(conjugate_identity_gap(kernel_boltzmann_shannon(), kAbs, 1, V{std::log(0.1)}, Side::left) <= 1e-6);
  CHECK(conjugate_identity_gap(kernel_fermi_dirac(), kAbs, 1, V{0}, Side::left) <= 1e-6);
  CHECK(conjugate_identity_gap(kernel_boltzmann_shannon(), kAbs, 2, V{3}, Side::right) <= 1e-6);
  CHECK(conjugate_identity_gap(kernel_fermi_dirac(), parse_objective("quad:2,0.4"), 0.5, V{0.8},
                               Side::right) <= 1e-6);
}

TEST_CASE("classical envelope") {
  CHECK(classical_envelope(kAbs, 1, V{0}) == Approx(0.125));
  CHECK(classical_envelope(kAbs, 1e-6, V{0}) == Approx(0.5).epsilon(1e-5));
  CHECK(classical_envelope(parse_objective("ind:0,1"), 2, V{3}) == Approx(1.0));
}

TEST_CASE("parameter errors") {
  CHECK_THROWS_AS(left_envelope(kernel_energy(), kAbs, 0, V{0}), Error);
  CHECK_THROWS_AS(right_envelope(kernel_energy(), kAbs, -2, V{0}), Error);
  CHECK_THROWS_AS(left_envelope(kernel_energy(), parse_objective("abs:0,abs:1"), 1, V{0, 1, 2}),
                  Error);
}
