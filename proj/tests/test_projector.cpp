#include <cmath>
#include <random>
#include <vector>

#include "bregenv/error.hpp"
#include "bregenv/projector.hpp"
#include "doctest.h"

using namespace bregenv;
using doctest::Approx;
using V = std::vector<double>;

namespace {
ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::internal;
}
} // namespace

TEST_CASE("probability hyperplane") {
  const auto c = parse_set("hyp:1,1=1");
  const auto e = left_project(kernel_energy(), c, V{1, 2});
  CHECK(e[0] == Approx(0.0));
  CHECK(e[1] == Approx(1.0));
  const auto b = left_project(kernel_boltzmann_shannon(), c, V{1, 2});
  CHECK(b[0] == Approx(1.0 / 3).epsilon(1e-12));
  CHECK(b[1] == Approx(2.0 / 3).epsilon(1e-12));
  const auto r = right_project(kernel_boltzmann_shannon(), c, V{1, 2});
  CHECK(r[0] + r[1] == Approx(1.0));
  const auto o = orthogonal_project(c, V{1, 2});
  CHECK(o[0] == Approx(0.0));
  CHECK(o[1] == Approx(1.0));
}

TEST_CASE("points already in the set are fixed") {
  const auto c = parse_set("hyp:1,1=1");
  for (const char* name : {"energy", "bs", "fd"}) {
    const auto k = kernel_by_name(name);
    const V y{0.3, 0.7};
    CHECK(left_project(k, c, y)[0] == Approx(0.3));
    CHECK(right_project(k, c, y)[1] == Approx(0.7));
  }
  CHECK(orthogonal_project(parse_set("box:0,1;0,1"), V{0.2, 0.9}) == V{0.2, 0.9});
}

TEST_CASE("energy projections are orthogonal") {
  const auto e = kernel_energy();
  for (const char* spec : {"hyp:1,2,-1=0.5", "box:0,1;-1,1;2,3"}) {
    const auto c = parse_set(spec);
    const V y{2.0, -3.0, 0.4};
    const auto o = orthogonal_project(c, y);
    const auto l = left_project(e, c, y), r = right_project(e, c, y);
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(l[j] == Approx(o[j]));
      CHECK(r[j] == Approx(o[j]));
    }
  }
  CHECK(orthogonal_project(parse_set("box:0,1;0,1"), V{2, -1}) == V{1, 0});
}

TEST_CASE("one-dimensional projections coincide") {
  for (const char* name : {"energy", "bs"}) {
    const auto k = kernel_by_name(name);
    const auto c = make_box({1.0}, {2.0});
    CHECK(left_project(k, c, V{0.5})[0] == Approx(1.0));
    CHECK(right_project(k, c, V{0.5})[0] == Approx(1.0));
    CHECK(right_project(k, c, V{1.5})[0] == Approx(1.5));
    CHECK(left_project(k, c, V{2.5})[0] == Approx(2.0));
  }
}

TEST_CASE("variational inequalities") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  const auto c = parse_set("hyp:1,2,1=1.5");
  for (const char* name : {"energy", "bs", "fd"}) {
    const auto k = kernel_by_name(name);
    for (int i = 0; i < 20; ++i) {
      const V y{u(rng), u(rng), u(rng)};
      const auto pl = left_project(k, c, y);
      const auto pr = right_project(k, c, y);
      CHECK(c.contains(pl, 1e-9));
      CHECK(c.contains(pr, 1e-9));
      // z in C ∩ U: move along the hyperplane.
      const V z{0.5, 0.25, 0.5};
      CHECK(left_variational_gap(k, y, pl, z) <= 1e-8);
      CHECK(right_variational_gap(k, y, pr, z) <= 1e-8);
    }
  }
}

TEST_CASE("set parsing and validation") {
  const auto b = parse_set("box:0,1;2,3");
  CHECK(b.kind == SetKind::box);
  CHECK(b.dimension() == 2);
  const auto h = parse_set("hyp:1,-1,2=4");
  CHECK(h.kind == SetKind::hyperplane);
  CHECK(h.offset == 4.0);
  CHECK(h.normal == V{1, -1, 2});
  CHECK_FALSE(b.describe().empty());
  CHECK(code_of([] { parse_set("ball:1"); }) == ErrorCode::parse);
  CHECK(code_of([] { parse_set("hyp:1,1"); }) == ErrorCode::parse);
  CHECK(code_of([] { parse_set("box:2,1"); }) == ErrorCode::invalid_set);
  CHECK(code_of([] { parse_set("hyp:0,0=1"); }) == ErrorCode::invalid_set);
}

TEST_CASE("projection errors") {
  const auto fd = kernel_fermi_dirac();
  CHECK(code_of([&] { left_project(fd, make_box({1}, {2}), V{0.5}); }) == ErrorCode::infeasible);
  CHECK(code_of([&] { right_project(fd, make_box({1}, {2}), V{0.5}); }) == ErrorCode::infeasible);
  // x1 + x2 = 3 has no point in (0,1)^2.
  CHECK(code_of([&] { left_project(fd, parse_set("hyp:1,1=3"), V{0.5, 0.5}); }) ==
        ErrorCode::infeasible);
  CHECK(code_of([&] { right_project(fd, parse_set("hyp:1,1=3"), V{0.5, 0.5}); }) ==
        ErrorCode::infeasible);
  CHECK(code_of([&] { left_project(fd, parse_set("hyp:1,1=1"), V{0.5}); }) == ErrorCode::dimension);
  CHECK(code_of([&] { left_project(kernel_boltzmann_shannon(), parse_set("hyp:1,1=1"), V{-1, 2}); }) ==
        ErrorCode::domain);
}
