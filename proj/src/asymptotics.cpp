#include "dispersia/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dispersia {
namespace {

constexpr double kLn2Pi = 1.8378770664093454836;

double log_phi(double x, double mu, double v) {
  const double u = x - mu;
  return -0.5 * (kLn2Pi + std::log(v)) - u * u / (2.0 * v);
}

// Standardized-scale support of Z = (Y - mu0)/sigma.
quad::Interval standardized_support(const CatalogEntry& e, double mu0,
                                    double sigma) {
  switch (e.support.kind) {
    case quad::Interval::Kind::Finite:
      return quad::Interval::finite((e.support.a - mu0) / sigma,
                                    (e.support.b - mu0) / sigma);
    case quad::Interval::Kind::SemiInfinite:
      return quad::Interval::semi_infinite((e.support.a - mu0) / sigma);
    case quad::Interval::Kind::Infinite:
      return quad::Interval::infinite();
  }
  throw std::logic_error("unreachable");
}

}  // namespace

double x_sigma(int k, double beta, double mu, double sigma2,
               bool negative_branch) {
  if (k != 3 && k != 4)
    throw std::domain_error("x_sigma: k must be 3 or 4");
  if (!(beta >= 0.0))
    throw std::domain_error("x_sigma: beta must be >= 0");
  if (beta == 0.0) return mu;
  const double step =
      std::pow(beta, 1.0 / k) *
      std::pow(sigma2, (2.0 - k) / (2.0 * k));
  return negative_branch ? mu - step : mu + step;
}

double log_density_ratio(const CatalogEntry& e, double x, double mu,
                         double mu0, double sigma2) {
  const double v0 = e.variance_formula(mu0);
  return standardized_log_pdf(e, x, mu, mu0, sigma2) - log_phi(x, mu, v0);
}

std::vector<double> default_schedule() {
  std::vector<double> s;
  for (int i = 1; i <= 8; ++i) s.push_back(std::pow(10.0, -i));
  return s;
}

LimitReport verify_limit(const CatalogEntry& e, double mu0, double beta,
                         const std::vector<double>& schedule, double tol,
                         bool negative_branch) {
  if (schedule.empty())
    throw std::domain_error("verify_limit: empty sigma2 schedule");
  const LimitConstant lc = limit_constant(e, mu0, beta);
  // For odd k the mirrored branch flips the sign of the limit exponent.
  const double log_predicted = (negative_branch && lc.k == 3)
                                   ? beta * lc.dkd / 12.0
                                   : -beta * lc.dkd / (lc.k == 3 ? 12.0 : 48.0);
  LimitReport rep;
  rep.entry = e.name;
  rep.k = lc.k;
  rep.beta = beta;
  rep.mu0 = mu0;
  rep.predicted = std::exp(log_predicted);
  rep.elevated = lc.elevated;
  for (double s2 : schedule) {
    const double x = x_sigma(lc.k, beta, 0.0, s2, negative_branch);
    const double lr = log_density_ratio(e, x, 0.0, mu0, s2);
    rep.rows.push_back({s2, x, std::exp(lr), rep.predicted,
                        std::fabs(lr - log_predicted)});
  }
  // Constants span hundreds of e-folds across the catalog, so closeness is
  // measured on the log scale, relative to the log-constant once it exceeds 1.
  rep.final_rel_err =
      rep.rows.back().abs_log_gap / std::max(1.0, std::fabs(log_predicted));
  rep.tail_monotone = true;
  const std::size_t n = rep.rows.size();
  const std::size_t tail = std::min<std::size_t>(4, n);
  for (std::size_t i = n - tail + 1; i < n; ++i)
    if (!(rep.rows[i].abs_log_gap <= rep.rows[i - 1].abs_log_gap))
      rep.tail_monotone = false;
  // At beta = 0 the gaps sit at round-off level, where a trend is
  // meaningless; the magnitude criterion alone decides.
  rep.converged = rep.final_rel_err <= tol && (rep.tail_monotone || beta == 0.0);
  return rep;
}

double theorem1_distance(const CatalogEntry& e, double mu, double mu0,
                         double sigma2, int grid_n) {
  if (grid_n < 2) throw std::domain_error("theorem1_distance: grid too small");
  const double sigma = std::sqrt(sigma2);
  const double v0 = e.variance_formula(mu0);
  const double sd = std::sqrt(v0);
  const quad::Interval zsup = standardized_support(e, mu0, sigma);
  double lo = mu - 6.0 * sd, hi = mu + 6.0 * sd;
  if (zsup.kind != quad::Interval::Kind::Infinite) {
    const double a = zsup.lower();
    lo = std::max(lo, a + 1e-9 * std::max(1.0, std::fabs(a)));
  }
  if (zsup.kind == quad::Interval::Kind::Finite) {
    const double b = zsup.upper();
    hi = std::min(hi, b - 1e-9 * std::max(1.0, std::fabs(b)));
  }
  if (!(lo < hi))
    throw std::domain_error("theorem1_distance: empty standardized grid");
  std::vector<double> grid(grid_n);
  for (int i = 0; i < grid_n; ++i)
    grid[i] = lo + (hi - lo) * i / (grid_n - 1.0);
  const auto fz = [&](double x) {
    return std::exp(standardized_log_pdf(e, x, mu, mu0, sigma2));
  };
  const std::vector<double> cdf =
      quad::cdf_on_grid(fz, zsup, grid, 1e-10, 1e-10);
  double sup = 0.0;
  for (int i = 0; i < grid_n; ++i) {
    const double phi =
        0.5 * std::erfc(-(grid[i] - mu) / (sd * std::sqrt(2.0)));
    sup = std::max(sup, std::fabs(cdf[i] - phi));
  }
  return sup;
}

double saddlepoint_uniformity(const CatalogEntry& e, double mu0, double sigma2,
                              double lo, double hi, int grid_n) {
  if (grid_n < 2)
    throw std::domain_error("saddlepoint_uniformity: grid too small");
  if (!(lo < hi)) {
    lo = e.compact_lo;
    hi = e.compact_hi;
  }
  double sup = 0.0;
  for (int i = 0; i < grid_n; ++i) {
    const double y = lo + (hi - lo) * i / (grid_n - 1.0);
    const double exact = exact_log_pdf(e, y, mu0, sigma2);
    const double sp = saddlepoint_log_pdf(e.deviance, y, mu0, sigma2);
    sup = std::max(sup, std::fabs(std::expm1(exact - sp)));
  }
  return sup;
}

double normalization_integral(const CatalogEntry& e, double mu0, double sigma2,
                              double abs_tol, double rel_tol) {
  const auto f = [&](double y) {
    return std::exp(exact_log_pdf(e, y, mu0, sigma2));
  };
  const quad::Result r = quad::integrate(f, e.support, abs_tol, rel_tol);
  if (!r.converged)
    throw std::runtime_error(e.name +
                             ": normalization quadrature did not converge");
  return r.value;
}

}  // namespace dispersia
