#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dispersia/asymptotics.hpp"
#include "dispersia/catalog.hpp"

using namespace dispersia;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("x_sigma inversion and the defining identity") {
  CHECK(std::fabs(x_sigma(3, 8.0, 0.0, 1e-4) -
                  2.0 * std::pow(0.01, -1.0 / 3.0)) < 1e-10);
  CHECK(x_sigma(4, 1.0, 0.0, 1e-4) == doctest::Approx(10.0).epsilon(1e-14));
  CHECK(x_sigma(3, 0.0, 1.7, 1e-6) == 1.7);
  CHECK(x_sigma(4, 0.0, -0.4, 1e-2) == -0.4);

  for (int k : {3, 4})
    for (double beta : {0.5, 1.0, 4.0})
      for (double s2 : default_schedule()) {
        const double x = x_sigma(k, beta, 0.3, s2);
        const double lhs =
            std::pow(x - 0.3, k) * std::pow(std::sqrt(s2), k - 2);
        CHECK(std::fabs(lhs - beta) <= 1e-14 * beta * 10.0);
      }

  CHECK_THROWS_AS(x_sigma(3, -1.0, 0.0, 1e-4), std::domain_error);
  CHECK_THROWS_AS(x_sigma(5, 1.0, 0.0, 1e-4), std::domain_error);
}

TEST_CASE("negative branch mirrors the sequence") {
  const double x = x_sigma(3, 1.0, 0.0, 1e-4, true);
  CHECK(x < 0.0);
  CHECK(x == -x_sigma(3, 1.0, 0.0, 1e-4, false));
}

TEST_CASE("density ratio is exactly one for the normal entry") {
  const CatalogEntry n = lookup("normal");
  for (int k : {3, 4})
    for (double beta : {0.0, 1.0, 8.0})
      for (double s2 : default_schedule()) {
        const double x = x_sigma(k, beta, 0.0, s2);
        // rounding mu0 + sigma*x costs ~ulp(mu0), which the exponent
        // amplifies by x/sigma; the bound tracks that noise floor
        const double tol = 1e-12 + 1e-15 * x / std::sqrt(s2);
        CHECK(std::fabs(log_density_ratio(n, x, 0.0, 0.4, s2)) < tol);
      }
}

TEST_CASE("density ratios approach the printed constants") {
  const double t_ratio = std::exp(
      log_density_ratio(lookup("student_t"), x_sigma(4, 1.0, 0.0, 1e-8), 0.0,
                        0.0, 1e-8));
  CHECK(std::fabs(t_ratio / std::exp(0.25) - 1.0) < 0.02);

  const double g_ratio = std::exp(
      log_density_ratio(lookup("gamma"), x_sigma(3, 1.0, 0.0, 1e-8), 0.0, 1.0,
                        1e-8));
  CHECK(std::fabs(g_ratio / std::exp(1.0 / 3.0) - 1.0) < 0.02);
}

TEST_CASE("verify_limit converges for the theorem-3 entries") {
  for (double beta : {0.0, 1.0, 4.0}) {
    CAPTURE(beta);
    const LimitReport t =
        verify_limit(lookup("student_t"), 0.0, beta, default_schedule());
    CHECK(t.k == 4);
    CHECK(t.converged);
    CHECK(verify_limit(lookup("von_mises"), kPi, beta, default_schedule())
              .converged);
  }
  const LimitReport vm =
      verify_limit(lookup("von_mises"), kPi, 1.0, default_schedule());
  CHECK(std::fabs(vm.predicted - std::exp(1.0 / 24.0)) < 1e-12);
  CHECK(vm.rows.size() == 8);
}

TEST_CASE("beta zero converges to one for every entry") {
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    const CatalogEntry e = lookup(name);
    const LimitReport rep =
        verify_limit(e, e.default_mu0, 0.0, default_schedule());
    CHECK(rep.predicted == 1.0);
    CHECK(rep.rows.back().abs_log_gap <= 1e-3);
    CHECK(rep.converged);
  }
}

TEST_CASE("gamma and GIG(a=1) produce identical ratios") {
  const CatalogEntry g = lookup("gamma");
  const CatalogEntry gig = lookup("gig_modified", {{"a", 1.0}});
  for (double s2 : default_schedule()) {
    const double x = x_sigma(3, 1.0, 0.0, s2);
    const double a = log_density_ratio(g, x, 0.0, 1.0, s2);
    const double b = log_density_ratio(gig, x, 0.0, 1.0, s2);
    CHECK(std::fabs(std::expm1(a - b)) < 1e-10);
  }
}

TEST_CASE("sign of the third derivative drives the ratio side") {
  const double s2 = 1e-6;
  for (const auto& name : {"gamma", "reciprocal_gamma", "inverse_gaussian",
                           "reciprocal_inverse_gaussian", "hyperbola",
                           "gig_modified"}) {
    CAPTURE(name);
    const CatalogEntry e = lookup(name);
    REQUIRE(e.d3_formula(e.default_mu0) < 0.0);
    const double lr = log_density_ratio(
        e, x_sigma(3, 1.0, 0.0, s2), 0.0, e.default_mu0, s2);
    CHECK(lr > 0.0);
  }
  const CatalogEntry lg = lookup("log_gamma");
  REQUIRE(lg.d3_formula(0.0) > 0.0);
  CHECK(log_density_ratio(lg, x_sigma(3, 1.0, 0.0, s2), 0.0, 0.0, s2) < 0.0);
}

TEST_CASE("theorem 1 distances") {
  CHECK(theorem1_distance(lookup("normal"), 0.0, 0.0, 0.5) < 1e-9);

  const CatalogEntry g = lookup("gamma");
  const double d2 = theorem1_distance(g, 0.0, 1.0, 1e-2);
  const double d4 = theorem1_distance(g, 0.0, 1.0, 1e-4);
  CHECK(d2 > d4);

  CHECK(theorem1_distance(lookup("student_t"), 0.0, 0.0, 1e-6) <= 1e-3);
}

TEST_CASE("saddlepoint uniformity sweeps") {
  for (double s2 : {0.1, 0.01})
    CHECK(saddlepoint_uniformity(lookup("simplex"), 0.3, s2) < 1e-12);

  const CatalogEntry g = lookup("gamma");
  double prev = 1e9;
  for (double s2 : {1e-2, 1e-4, 1e-6}) {
    const double sup = saddlepoint_uniformity(g, 1.0, s2, 0.5, 2.0);
    CHECK(sup < prev);
    prev = sup;
  }

  CHECK(saddlepoint_uniformity(lookup("von_mises"), kPi, 1e-6, kPi / 2.0,
                               1.5 * kPi) < 1e-4);
}

TEST_CASE("schedule and input validation") {
  const auto sched = default_schedule();
  REQUIRE(sched.size() == 8);
  CHECK(sched.front() == 0.1);
  CHECK(sched.back() == 1e-8);
  for (std::size_t i = 1; i < sched.size(); ++i)
    CHECK(sched[i] < sched[i - 1]);
  CHECK_THROWS_AS(verify_limit(lookup("gamma"), 1.0, 1.0, {}),
                  std::domain_error);
  CHECK_THROWS_AS(theorem1_distance(lookup("gamma"), 0.0, 1.0, 1e-2, 1),
                  std::domain_error);
}
