#include <cmath>
#include <string>
#include <vector>

#include "bregenv/asymptotics.hpp"
#include "bregenv/error.hpp"
#include "doctest.h"

using namespace bregenv;
using doctest::Approx;
using V = std::vector<double>;

namespace {
const ConvexObjective kAbs = parse_objective("abs:0.5");
} // namespace

TEST_CASE("energy sweep records") {
  const auto rec = gamma_sweep(kernel_energy(), kAbs, V{2}, Side::left, V{0.1, 1, 10});
  REQUIRE(rec.size() == 3);
  CHECK(rec[0].prox_point[0] == Approx(1.9));
  CHECK(rec[1].prox_point[0] == Approx(1.0));
  CHECK(rec[2].prox_point[0] == Approx(0.5));
  CHECK(rec[1].envelope == Approx(1.0));
  CHECK(rec[1].bregman_term == Approx(0.5));
  CHECK(rec[1].scaled_term == Approx(0.5));
  CHECK(rec[2].theta_at_prox == 0.0);
  const auto rep = limit_report(kernel_energy(), kAbs, rec);
  CHECK(rep.properties_hold);
}

TEST_CASE("default grid sweep passes every check") {
  const auto grid = log_gamma_grid();
  REQUIRE(grid.size() == 25);
  CHECK(grid.front() == 1e-6);
  CHECK(grid.back() == 1e6);
  for (const char* name : {"energy", "bs", "fd"}) {
    for (Side side : {Side::left, Side::right}) {
      CAPTURE(name);
      const auto k = kernel_by_name(name);
      const auto rec = gamma_sweep(k, kAbs, V{0.1}, side, grid);
      const auto rep = limit_report(k, kAbs, rec);
      CHECK(rep.properties_hold);
      CHECK(rep.limits_achieved);
      REQUIRE(rep.find("envelope_to_inf_large_gamma"));
      CHECK(rep.find("envelope_to_inf_large_gamma")->available);
      CHECK_FALSE(rep.find("no_such_check"));
    }
  }
}

TEST_CASE("bs envelope spans theta down to its infimum") {
  const auto rec = gamma_sweep(kernel_boltzmann_shannon(), kAbs, V{0.1}, Side::left,
                               log_gamma_grid(1e-3, 1e3, 13));
  CHECK(rec.front().envelope == Approx(0.4).epsilon(1e-3));
  CHECK(rec.back().envelope < 1e-2);
  for (std::size_t i = 1; i < rec.size(); ++i) CHECK(rec[i].envelope <= rec[i - 1].envelope);
}

TEST_CASE("report flags missing references") {
  // theta is +inf at the base point and has no finite known infimum target.
  const auto th = parse_objective("ind:1,2");
  const auto k = kernel_boltzmann_shannon();
  const auto rec = gamma_sweep(k, th, V{0.5}, Side::left, log_gamma_grid(1e-3, 1e3, 7));
  const auto rep = limit_report(k, th, rec);
  CHECK(rep.properties_hold);
  CHECK_FALSE(rep.find("envelope_to_theta_small_gamma")->available);
  CHECK_FALSE(rep.limits_achieved);
}

TEST_CASE("report catches a broken monotonicity") {
  auto rec = gamma_sweep(kernel_energy(), kAbs, V{2}, Side::left, V{0.1, 1, 10});
  rec[2].envelope = rec[1].envelope + 1e-3;
  const auto rep = limit_report(kernel_energy(), kAbs, rec);
  CHECK_FALSE(rep.properties_hold);
  CHECK_FALSE(rep.find("envelope_nonincreasing")->passed);
  CHECK(rep.find("envelope_nonincreasing")->gap == Approx(1e-3));
}

TEST_CASE("the scaled term is not required to be monotone") {
  // Energy, y = 2: the scaled term rises then falls as gamma grows.
  const auto rec = gamma_sweep(kernel_energy(), kAbs, V{2}, Side::left, log_gamma_grid(1e-2, 1e2, 9));
  bool up = false, down = false;
  for (std::size_t i = 1; i < rec.size(); ++i) {
    up = up || rec[i].scaled_term > rec[i - 1].scaled_term;
    down = down || rec[i].scaled_term < rec[i - 1].scaled_term;
  }
  CHECK(up);
  CHECK(down);
  CHECK(limit_report(kernel_energy(), kAbs, rec).properties_hold);
}

TEST_CASE("sweep errors") {
  const auto e = kernel_energy();
  CHECK_THROWS_AS(gamma_sweep(e, kAbs, V{0}, Side::left, V{}), Error);
  CHECK_THROWS_AS(gamma_sweep(e, kAbs, V{0}, Side::left, V{1, 0.5}), Error);
  CHECK_THROWS_AS(gamma_sweep(e, kAbs, V{0}, Side::left, V{-1, 1}), Error);
  CHECK_THROWS_AS(log_gamma_grid(0, 1, 5), Error);
  CHECK_THROWS_AS(limit_report(e, kAbs, std::vector<SweepRecord>{}), Error);
  try {
    gamma_sweep(kernel_boltzmann_shannon(), kAbs, V{-1}, Side::left, V{0.5});
    FAIL("expected domain error");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::domain);
    CHECK(std::string(err.what()).rfind("gamma=0.5: ", 0) == 0);
  }
}
