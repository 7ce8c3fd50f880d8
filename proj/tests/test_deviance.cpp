#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "dispersia/catalog.hpp"
#include "dispersia/deviance.hpp"

using namespace dispersia;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kLn2Pi = 1.8378770664093454836;

UnitDeviance quadratic_on(double lo, double hi, double olo, double ohi) {
  UnitDeviance dev;
  dev.support = quad::Interval::finite(lo, hi);
  dev.omega_lo = olo;
  dev.omega_hi = ohi;
  dev.d = [](double y, double mu) { return (y - mu) * (y - mu); };
  return dev;
}
}  // namespace

TEST_CASE("pointwise deviance values") {
  const CatalogEntry gamma = lookup("gamma");
  CHECK(gamma.deviance.d(2.0, 2.0) == 0.0);
  const CatalogEntry t = lookup("student_t");
  CHECK(std::fabs(t.deviance.d(1.0, 0.0) - std::log(2.0)) < 1e-15);
  const CatalogEntry vm = lookup("von_mises");
  CHECK(std::fabs(vm.deviance.d(kPi + 1.0, 1.0) - 4.0) < 1e-12);
}

TEST_CASE("check_unit_deviance flags violations and validates points") {
  const CatalogEntry gamma = lookup("gamma");
  CHECK(check_unit_deviance(gamma.deviance,
                            deviance_check_grid(0.4, 2.5, 0.4, 2.5, 20))
            .empty());

  UnitDeviance bad = quadratic_on(-1.0, 1.0, -1.0, 1.0);
  bad.d = [](double y, double mu) { return (y - mu) * (y - mu) - 1e-3; };
  const auto report = check_unit_deviance(bad, {{0.51, 0.5}, {0.2, 0.2}});
  CHECK(report.size() == 2);

  CHECK_THROWS_AS(
      check_unit_deviance(gamma.deviance, {{-1.0, 1.0}}), std::domain_error);
}

TEST_CASE("finite-difference diagonal derivatives") {
  const CatalogEntry gamma = lookup("gamma");
  CHECK(std::fabs(diagonal_derivative_fd(gamma.deviance, 1.0, 2) - 2.0) < 2e-5);
  const CatalogEntry t = lookup("student_t");
  CHECK(std::fabs(diagonal_derivative_fd(t.deviance, 0.0, 3)) < 1e-5);
  const CatalogEntry vm = lookup("von_mises");
  CHECK(std::fabs(diagonal_derivative_fd(vm.deviance, 2.0, 4) + 2.0) < 2e-5);
  CHECK_THROWS_AS(diagonal_derivative_fd(gamma.deviance, 1.0, 5),
                  std::domain_error);
  CHECK_THROWS_AS(diagonal_derivative_fd(gamma.deviance, -1.0, 2),
                  std::domain_error);
}

TEST_CASE("closed-form diagonal table matches finite differences") {
  for (const auto& name : catalog_names()) {
    const CatalogEntry e = lookup(name);
    for (double mu0 : e.check_mu0) {
      CAPTURE(name);
      CAPTURE(mu0);
      for (int order = 2; order <= 4; ++order) {
        const double cf = e.deviance.closed_form_diagonal.at(order)(mu0);
        const double fd = diagonal_derivative_fd(e.deviance, mu0, order);
        CHECK(std::fabs(fd - cf) <= 1e-5 * std::max(1.0, std::fabs(cf)));
      }
    }
  }
}

TEST_CASE("variance function") {
  CHECK(variance_function(lookup("gamma").deviance, 2.0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(variance_function(lookup("inverse_gaussian").deviance, 2.0) ==
        doctest::Approx(8.0).epsilon(1e-12));
  CHECK(variance_function(lookup("ghs").deviance, 0.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // finite-difference fallback when no closed form is attached
  UnitDeviance dev = quadratic_on(-5.0, 5.0, -5.0, 5.0);
  CHECK(variance_function(dev, 0.3) == doctest::Approx(1.0).epsilon(1e-8));
  // non-regular deviance rejected
  dev.d = [](double y, double mu) {
    const double u = y - mu;
    return u * u * u * u;
  };
  CHECK_THROWS_AS(variance_function(dev, 0.0), std::domain_error);
}

TEST_CASE("regularity checks and the chain identity") {
  const auto gamma = check_regularity(lookup("gamma").deviance, 1.0);
  CHECK(gamma.pass);
  CHECK(std::fabs(gamma.common_second_derivative - 2.0) < 1e-6);

  const auto leip = check_regularity(lookup("leipnik").deviance, 0.3);
  CHECK(leip.pass);
  CHECK(std::fabs(leip.common_second_derivative - 2.0 / (1.0 - 0.09)) < 1e-5);

  const auto hyp = check_regularity(lookup("hyperbola").deviance, 1.0);
  CHECK(hyp.pass);
  CHECK(std::fabs(hyp.common_second_derivative - 2.0) < 1e-6);

  // an asymmetric non-deviance fails the first-order condition
  UnitDeviance skew = quadratic_on(-5.0, 5.0, -5.0, 5.0);
  skew.d = [](double y, double mu) { return (y - mu) * (y - mu) + 0.1 * (y - mu); };
  CHECK_FALSE(check_regularity(skew, 0.0).pass);
}

TEST_CASE("saddlepoint density: exactness and domains") {
  const CatalogEntry n = lookup("normal");
  for (double y : {-1.0, 0.3, 2.0})
    for (double s2 : {0.01, 1.0, 9.0}) {
      const double want = -0.5 * (kLn2Pi + std::log(s2)) -
                          (y - 0.5) * (y - 0.5) / (2.0 * s2);
      CHECK(std::fabs(saddlepoint_log_pdf(n.deviance, y, 0.5, s2) - want) <
            1e-14);
    }

  const CatalogEntry sim = lookup("simplex");
  for (double s2 : {0.1, 0.01})
    for (int i = 0; i <= 40; ++i) {
      const double y = 0.1 + 0.8 * i / 40.0;
      CHECK(std::fabs(exact_log_pdf(sim, y, 0.3, s2) -
                      saddlepoint_log_pdf(sim.deviance, y, 0.3, s2)) < 1e-12);
    }

  const CatalogEntry g = lookup("gamma");
  CHECK(std::fabs(saddlepoint_log_pdf(g.deviance, 1.0, 1.0, 0.01) -
                  (-0.5 * std::log(2.0 * kPi * 0.01))) < 1e-12);
  // ratio exact/saddlepoint tends to 1 as sigma2 -> 0
  double prev_gap = 1e9;
  for (double s2 : {1e-2, 1e-4, 1e-6}) {
    const double gap = std::fabs(std::expm1(
        exact_log_pdf(g, 1.3, 1.0, s2) -
        saddlepoint_log_pdf(g.deviance, 1.3, 1.0, s2)));
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 1e-6);
}

TEST_CASE("saddlepoint rejects y outside Omega distinctly") {
  UnitDeviance dev = quadratic_on(0.0, 1.0, 0.2, 0.8);
  // y in C but outside Omega
  CHECK_THROWS_WITH_AS(saddlepoint_log_pdf(dev, 0.1, 0.5, 0.01),
                       doctest::Contains("outside Omega"), std::domain_error);
  // y outside C entirely
  CHECK_THROWS_WITH_AS(saddlepoint_log_pdf(dev, 1.5, 0.5, 0.01),
                       doctest::Contains("outside the support"),
                       std::domain_error);
  CHECK_THROWS_AS(saddlepoint_log_pdf(dev, 0.5, 0.5, -1.0), std::domain_error);
}

TEST_CASE("sigma * a(y; sigma2) approaches the saddlepoint prefactor") {
  // sigma*a(y;s2)*sqrt(2 pi V(y)) -> 1 as sigma2 -> 0, uniformly on compacts
  const double s2 = 1e-6;
  for (const auto& name : catalog_names()) {
    const CatalogEntry e = lookup(name);
    CAPTURE(name);
    for (int i = 0; i <= 20; ++i) {
      const double y =
          e.compact_lo + (e.compact_hi - e.compact_lo) * i / 20.0;
      const double ln_ratio = 0.5 * std::log(s2) + e.log_normalizer(y, s2) +
                              0.5 * (kLn2Pi + std::log(e.variance_formula(y)));
      CHECK(std::fabs(std::expm1(ln_ratio)) < 0.01);
    }
  }
}

TEST_CASE("grid construction places exact diagonal points") {
  const auto grid = deviance_check_grid(0.0, 1.0, 0.0, 1.0, 10);
  CHECK(grid.size() == 110);
  int diag = 0;
  for (const auto& [y, mu] : grid)
    if (y == mu) ++diag;
  CHECK(diag >= 10);
}
