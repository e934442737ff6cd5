#include <cmath>
#include <cstring>
#include <string>
#include <thread>
#include <vector>

#include "bregenv/bregenv.h"
#include "doctest.h"

using doctest::Approx;

namespace {

struct Fixture {
  bregenv_kernel* k = nullptr;
  bregenv_objective* th = nullptr;
  Fixture(const char* kernel, const char* theta) {
    REQUIRE(bregenv_kernel_create(kernel, &k) == BREGENV_OK);
    REQUIRE(bregenv_objective_parse(theta, &th) == BREGENV_OK);
  }
  ~Fixture() {
    bregenv_objective_destroy(th);
    bregenv_kernel_destroy(k);
  }
};

} // namespace

TEST_CASE("strings and defaults") {
  CHECK(std::strlen(bregenv_version()) > 0);
  CHECK(std::string(bregenv_status_string(BREGENV_E_INFEASIBLE)) == "infeasible");
  CHECK(std::string(bregenv_branch_string(BREGENV_BRANCH_CLOSED_FORM)) == "closed_form");
  CHECK(std::string(bregenv_reason_string(BREGENV_REASON_BOUNDARY)) == "boundary_no_gradient");
  bregenv_options o;
  bregenv_default_options(&o);
  CHECK(o.tol == 1e-10);
  CHECK(o.max_iter == 200);
  CHECK(o.allow_closed_form == 1);
  bregenv_default_options(nullptr);
}

TEST_CASE("handle creation errors") {
  bregenv_kernel* k = nullptr;
  CHECK(bregenv_kernel_create("nope", &k) == BREGENV_E_PARSE);
  CHECK(k == nullptr);
  CHECK(std::string(bregenv_last_error()).find("nope") != std::string::npos);
  CHECK(bregenv_kernel_create(nullptr, &k) == BREGENV_E_NULL_ARGUMENT);
  CHECK(bregenv_kernel_create("bs", nullptr) == BREGENV_E_NULL_ARGUMENT);
  bregenv_objective* th = nullptr;
  CHECK(bregenv_objective_parse("quad:-1,0", &th) == BREGENV_E_CONVEXITY);
  CHECK(bregenv_objective_parse("ind:2,1", &th) == BREGENV_E_INVALID_SET);
  bregenv_set* s = nullptr;
  CHECK(bregenv_set_parse("hyp:0,0=1", &s) == BREGENV_E_INVALID_SET);
  CHECK(bregenv_set_parse("tri:1", &s) == BREGENV_E_PARSE);
  // Destroying null handles is a no-op.
  bregenv_kernel_destroy(nullptr);
  bregenv_objective_destroy(nullptr);
  bregenv_set_destroy(nullptr);
  bregenv_sweep_destroy(nullptr);
  bregenv_trajectory_destroy(nullptr);
}

TEST_CASE("kernel queries") {
  Fixture f("fd", "abs:0.5");
  CHECK(std::string(bregenv_kernel_name(f.k)) == "fd");
  const double in[2] = {0.2, 0.9}, edge[1] = {0.0};
  CHECK(bregenv_kernel_in_interior(f.k, in, 2) == 1);
  CHECK(bregenv_kernel_in_interior(f.k, edge, 1) == 0);
  CHECK(bregenv_kernel_in_domain(f.k, edge, 1) == 1);
  double v = 0, g = 0, h = 0;
  CHECK(bregenv_kernel_eval(f.k, 0.5, &v, &g, &h) == BREGENV_OK);
  CHECK(v == Approx(std::log(0.5)));
  CHECK(g == Approx(0.0));
  CHECK(h == Approx(4.0));
  CHECK(bregenv_kernel_eval(f.k, 2.0, &v, nullptr, nullptr) == BREGENV_E_DOMAIN);
  double d = 0;
  const double x[1] = {0.5}, y[1] = {0.5};
  CHECK(bregenv_bregman_distance(f.k, x, y, 1, &d) == BREGENV_OK);
  CHECK(d == Approx(0.0));
  double tv = 0;
  CHECK(bregenv_objective_value(f.th, in, 2, &tv) == BREGENV_OK);
  CHECK(tv == Approx(0.3 + 0.4));
}

TEST_CASE("prox and envelope") {
  Fixture f("bs", "abs:0.5");
  const double x[1] = {3.0};
  double p = 0;
  bregenv_prox_info info{};
  REQUIRE(bregenv_prox(f.k, f.th, BREGENV_RIGHT, 1.0, x, 1, nullptr, &p, &info) == BREGENV_OK);
  CHECK(p == Approx(1.5));
  CHECK(info.envelope_value == Approx(3 * std::log(2.0) - 0.5));
  CHECK(info.branch == BREGENV_BRANCH_CLOSED_FORM);

  bregenv_options o;
  bregenv_default_options(&o);
  o.allow_closed_form = 0;
  REQUIRE(bregenv_prox(f.k, f.th, BREGENV_RIGHT, 1.0, x, 1, &o, &p, &info) == BREGENV_OK);
  CHECK(p == Approx(1.5));
  CHECK(info.branch != BREGENV_BRANCH_CLOSED_FORM);

  double grad = 0;
  bregenv_envelope_info e{};
  REQUIRE(bregenv_envelope(f.k, f.th, BREGENV_RIGHT, 1.0, x, 1, nullptr, &p, &grad, &e) == BREGENV_OK);
  CHECK(e.value == Approx(1.579441542));
  CHECK(e.has_gradient == 1);
  CHECK(grad == Approx(std::log(2.0)));

  const double out[1] = {-1.0};
  REQUIRE(bregenv_envelope(f.k, f.th, BREGENV_LEFT, 1.0, out, 1, nullptr, &p, &grad, &e) == BREGENV_OK);
  CHECK(std::isinf(e.value));
  CHECK(e.reason == BREGENV_REASON_OUTSIDE_DOMAIN);
  CHECK(e.has_prox == 0);

  const double edge[1] = {0.0};
  REQUIRE(bregenv_envelope(f.k, f.th, BREGENV_RIGHT, 0.5, edge, 1, nullptr, nullptr, &grad, &e) ==
          BREGENV_OK);
  CHECK(e.value == Approx(0.5));
  CHECK(e.reason == BREGENV_REASON_BOUNDARY);
  CHECK(e.has_gradient == 0);
}

TEST_CASE("prox errors map to status codes") {
  Fixture f("bs", "abs:0.5");
  const double x[1] = {-1.0}, ok[1] = {1.0};
  double p = 0;
  CHECK(bregenv_prox(f.k, f.th, BREGENV_LEFT, 1.0, x, 1, nullptr, &p, nullptr) == BREGENV_E_DOMAIN);
  CHECK(bregenv_prox(f.k, f.th, BREGENV_LEFT, 0.0, ok, 1, nullptr, &p, nullptr) == BREGENV_E_PARAMETER);
  CHECK(bregenv_prox(f.k, f.th, BREGENV_LEFT, 1.0, ok, 0, nullptr, &p, nullptr) == BREGENV_E_DIMENSION);
  CHECK(bregenv_prox(f.k, f.th, BREGENV_LEFT, 1.0, nullptr, 1, nullptr, &p, nullptr) ==
        BREGENV_E_NULL_ARGUMENT);
  CHECK(bregenv_prox(f.k, f.th, static_cast<bregenv_side>(7), 1.0, ok, 1, nullptr, &p, nullptr) ==
        BREGENV_E_PARAMETER);
  bregenv_options bad{0.0, 10, 1};
  CHECK(bregenv_prox(f.k, f.th, BREGENV_LEFT, 1.0, ok, 1, &bad, &p, nullptr) == BREGENV_E_PARAMETER);
}

TEST_CASE("projections") {
  bregenv_kernel* k = nullptr;
  bregenv_set* s = nullptr;
  REQUIRE(bregenv_kernel_create("bs", &k) == BREGENV_OK);
  REQUIRE(bregenv_set_parse("hyp:1,1=1", &s) == BREGENV_OK);
  CHECK(bregenv_set_dimension(s) == 2);
  const double y[2] = {1, 2};
  double p[2];
  REQUIRE(bregenv_project(k, s, BREGENV_PROJECT_LEFT, y, 2, 1e-10, p) == BREGENV_OK);
  CHECK(p[0] == Approx(1.0 / 3));
  REQUIRE(bregenv_project(k, s, BREGENV_PROJECT_ORTHOGONAL, y, 2, 1e-10, p) == BREGENV_OK);
  CHECK(p[1] == Approx(1.0));
  CHECK(bregenv_project(k, s, BREGENV_PROJECT_LEFT, y, 1, 1e-10, p) == BREGENV_E_DIMENSION);
  bregenv_set_destroy(s);
  bregenv_kernel_destroy(k);

  REQUIRE(bregenv_kernel_create("fd", &k) == BREGENV_OK);
  REQUIRE(bregenv_set_parse("box:1,2", &s) == BREGENV_OK);
  const double x[1] = {0.5};
  CHECK(bregenv_project(k, s, BREGENV_PROJECT_RIGHT, x, 1, 1e-10, p) == BREGENV_E_INFEASIBLE);
  bregenv_set_destroy(s);
  bregenv_kernel_destroy(k);
}

TEST_CASE("gamma sweeps") {
  Fixture f("energy", "abs:0.5");
  double g[25];
  REQUIRE(bregenv_log_gamma_grid(1e-6, 1e6, 25, g) == BREGENV_OK);
  CHECK(bregenv_log_gamma_grid(-1, 1, 3, g) == BREGENV_E_PARAMETER);
  const double y[1] = {2.0};
  bregenv_sweep* s = nullptr;
  REQUIRE(bregenv_sweep_run(f.k, f.th, BREGENV_LEFT, y, 1, g, 25, nullptr, &s) == BREGENV_OK);
  CHECK(bregenv_sweep_size(s) == 25);
  bregenv_sweep_row row{};
  double p = 0;
  REQUIRE(bregenv_sweep_record(s, 24, &row, &p) == BREGENV_OK);
  CHECK(row.gamma == 1e6);
  CHECK(p == Approx(0.5));
  CHECK(bregenv_sweep_record(s, 25, &row, &p) == BREGENV_E_PARAMETER);
  CHECK(bregenv_sweep_properties_hold(s) == 1);
  const size_t n = bregenv_sweep_check_count(s);
  CHECK(n == 8);
  for (size_t i = 0; i < n; ++i) {
    bregenv_limit_check c{};
    REQUIRE(bregenv_sweep_check(s, i, &c) == BREGENV_OK);
    CHECK(c.passed == 1);
    CHECK(std::strlen(c.name) > 0);
  }
  bregenv_sweep_destroy(s);

  const double bad[2] = {1.0, 0.5};
  CHECK(bregenv_sweep_run(f.k, f.th, BREGENV_LEFT, y, 1, bad, 2, nullptr, &s) == BREGENV_E_PARAMETER);
}

TEST_CASE("proximal-point trajectories") {
  Fixture f("bs", "abs:0.5");
  const double x0[1] = {0.01};
  bregenv_trajectory* t = nullptr;
  REQUIRE(bregenv_proximal_point(f.k, f.th, 1.0, x0, 1, 1000, 1e-12, nullptr, &t) == BREGENV_OK);
  CHECK(bregenv_trajectory_converged(t) == 1);
  CHECK(bregenv_trajectory_dimension(t) == 1);
  const size_t len = bregenv_trajectory_length(t);
  double x = 0;
  REQUIRE(bregenv_trajectory_point(t, len - 1, &x) == BREGENV_OK);
  CHECK(x == Approx(0.5));
  CHECK(bregenv_trajectory_step_residual(t) <= 1e-12);
  CHECK(std::string(bregenv_trajectory_certificate(t)) == "b,c");
  bregenv_trajectory_destroy(t);

  REQUIRE(bregenv_proximal_point(f.k, f.th, 1.0, x0, 1, 2, 1e-12, nullptr, &t) == BREGENV_OK);
  CHECK(bregenv_trajectory_converged(t) == 0);
  bregenv_trajectory_destroy(t);
  CHECK(bregenv_proximal_point(f.k, f.th, 1.0, x0, 1, 0, 1e-12, nullptr, &t) == BREGENV_E_PARAMETER);
}

TEST_CASE("last error is per thread") {
  bregenv_kernel* k = nullptr;
  CHECK(bregenv_kernel_create("bad_kernel_name", &k) == BREGENV_E_PARSE);
  std::string other;
  std::thread th([&] {
    bregenv_kernel* k2 = nullptr;
    bregenv_kernel_create("energy", &k2);
    bregenv_kernel_destroy(k2);
    other = bregenv_last_error();
  });
  th.join();
  CHECK(other.empty());
  CHECK(std::string(bregenv_last_error()).find("bad_kernel_name") != std::string::npos);
}

TEST_CASE("handles are shareable across threads") {
  Fixture f("fd", "abs:0.5");
  std::vector<double> results(8);
  std::vector<std::thread> pool;
  for (int i = 0; i < 8; ++i) {
    pool.emplace_back([&, i] {
      const double y[1] = {0.1};
      double p = 0;
      bregenv_prox(f.k, f.th, BREGENV_LEFT, 1.0, y, 1, nullptr, &p, nullptr);
      results[i] = p;
    });
  }
  for (auto& t : pool) t.join();
  for (double r : results) CHECK(r == Approx(0.2319693167));
}

TEST_CASE("out-of-range enum values are rejected") {
  CHECK(std::string(bregenv_status_string(static_cast<bregenv_status>(99))) == "unknown");
  CHECK(std::string(bregenv_branch_string(static_cast<bregenv_branch>(99))) == "unknown");
  bregenv_kernel* k = nullptr;
  bregenv_set* s = nullptr;
  REQUIRE(bregenv_kernel_create("energy", &k) == BREGENV_OK);
  REQUIRE(bregenv_set_parse("box:0,1", &s) == BREGENV_OK);
  const double x[1] = {2.0};
  double p = 0;
  CHECK(bregenv_project(k, s, static_cast<bregenv_projection>(9), x, 1, 1e-10, &p) ==
        BREGENV_E_PARAMETER);
  CHECK(bregenv_project(nullptr, s, BREGENV_PROJECT_ORTHOGONAL, x, 1, 1e-10, &p) == BREGENV_OK);
  CHECK(p == 1.0);
  bregenv_set_destroy(s);
  bregenv_kernel_destroy(k);
}
