#include "dispersia/deviance.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dispersia {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kLn2Pi = 1.8378770664093454836;

// Two-level Richardson extrapolation of an O(h^2) approximation, evaluated
// at steps h, 2h, 4h so the smallest step bounds the round-off.
double richardson(const std::function<double(double)>& approx, double h) {
  const double a1 = approx(h);
  const double a2 = approx(2.0 * h);
  const double a4 = approx(4.0 * h);
  const double b1 = (4.0 * a1 - a2) / 3.0;
  const double b2 = (4.0 * a2 - a4) / 3.0;
  return (16.0 * b1 - b2) / 15.0;
}

// Shrink h until [y - m*4h, y + m*4h] stays inside the open support.
double fit_step(const UnitDeviance& dev, double y, double h, int multiple) {
  for (int tries = 0; tries < 60; ++tries) {
    const double reach = 4.0 * multiple * h;
    if (dev.in_support(y - reach) && dev.in_support(y + reach)) return h;
    h *= 0.5;
  }
  throw std::domain_error(
      "deviance: finite-difference stencil cannot fit inside the support at y = " +
      std::to_string(y));
}

double fd_diagonal(const UnitDeviance& dev, double mu0, int order) {
  const auto f = [&](double y) { return dev.d(y, mu0); };
  double h0 = std::pow(kEps, 1.0 / (order + 2)) * (1.0 + std::fabs(mu0));
  const int multiple = order >= 3 ? 2 : 1;
  h0 = fit_step(dev, mu0, h0, multiple);
  switch (order) {
    case 2:
      return richardson(
          [&](double h) {
            return (f(mu0 + h) - 2.0 * f(mu0) + f(mu0 - h)) / (h * h);
          },
          h0);
    case 3:
      return richardson(
          [&](double h) {
            return (f(mu0 + 2.0 * h) - 2.0 * f(mu0 + h) + 2.0 * f(mu0 - h) -
                    f(mu0 - 2.0 * h)) /
                   (2.0 * h * h * h);
          },
          h0);
    case 4:
      return richardson(
          [&](double h) {
            return (f(mu0 + 2.0 * h) - 4.0 * f(mu0 + h) + 6.0 * f(mu0) -
                    4.0 * f(mu0 - h) + f(mu0 - 2.0 * h)) /
                   (h * h * h * h);
          },
          h0);
    default:
      throw std::domain_error("diagonal_derivative_fd: order must be 2, 3 or 4");
  }
}

double second_derivative_estimate(const UnitDeviance& dev, double mu0) {
  auto it = dev.closed_form_diagonal.find(2);
  if (it != dev.closed_form_diagonal.end()) return it->second(mu0);
  return fd_diagonal(dev, mu0, 2);
}

}  // namespace

std::vector<DevianceViolation> check_unit_deviance(
    const UnitDeviance& dev,
    const std::vector<std::pair<double, double>>& grid) {
  std::vector<DevianceViolation> out;
  for (const auto& [y, mu] : grid) {
    if (!dev.in_support(y) || !dev.in_omega(mu))
      throw std::domain_error("check_unit_deviance: point (" +
                              std::to_string(y) + ", " + std::to_string(mu) +
                              ") outside C x Omega");
    const double v = dev.d(y, mu);
    if (y == mu) {
      const double scale = std::fabs(second_derivative_estimate(dev, mu));
      if (!(std::fabs(v) <= 1e-12 * (1.0 + scale)))
        out.push_back({y, mu, v, "d(y;y) not zero"});
    } else if (!(v > 0.0)) {
      out.push_back({y, mu, v, "d(y;mu) not positive off the diagonal"});
    }
  }
  return out;
}

double diagonal_derivative_fd(const UnitDeviance& dev, double mu0, int order) {
  if (!dev.in_omega(mu0))
    throw std::domain_error("diagonal_derivative_fd: mu0 outside Omega");
  return fd_diagonal(dev, mu0, order);
}

double variance_function(const UnitDeviance& dev, double mu0) {
  if (!dev.in_omega(mu0))
    throw std::domain_error("variance_function: mu0 outside Omega");
  const double d2 = second_derivative_estimate(dev, mu0);
  if (!(d2 > 0.0))
    throw std::domain_error(
        "variance_function: non-positive diagonal second derivative (deviance "
        "not regular) at mu0 = " +
        std::to_string(mu0));
  return 2.0 / d2;
}

RegularityReport check_regularity(const UnitDeviance& dev, double mu0) {
  if (!dev.in_omega(mu0))
    throw std::domain_error("check_regularity: mu0 interior to Omega required");
  RegularityReport rep;

  // First-order conditions.
  double h1 = std::pow(kEps, 1.0 / 3.0) * (1.0 + std::fabs(mu0));
  h1 = fit_step(dev, mu0, h1, 1);
  const double dy = richardson(
      [&](double h) { return (dev.d(mu0 + h, mu0) - dev.d(mu0 - h, mu0)) / (2.0 * h); },
      h1);
  const double dmu = richardson(
      [&](double h) { return (dev.d(mu0, mu0 + h) - dev.d(mu0, mu0 - h)) / (2.0 * h); },
      h1);
  if (!(std::fabs(dy) <= 1e-8))
    rep.failures.push_back("first-order condition d_y d(mu;mu) = 0 violated");
  if (!(std::fabs(dmu) <= 1e-8))
    rep.failures.push_back("first-order condition d_mu d(mu;mu) = 0 violated");

  // Three equivalent second-derivative expressions.
  double h2 = std::pow(kEps, 1.0 / 4.0) * (1.0 + std::fabs(mu0));
  h2 = fit_step(dev, mu0, h2, 1);
  const double dyy = richardson(
      [&](double h) {
        return (dev.d(mu0 + h, mu0) - 2.0 * dev.d(mu0, mu0) +
                dev.d(mu0 - h, mu0)) / (h * h);
      },
      h2);
  const double dmm = richardson(
      [&](double h) {
        return (dev.d(mu0, mu0 + h) - 2.0 * dev.d(mu0, mu0) +
                dev.d(mu0, mu0 - h)) / (h * h);
      },
      h2);
  const double dmy = richardson(
      [&](double h) {
        return (dev.d(mu0 + h, mu0 + h) - dev.d(mu0 + h, mu0 - h) -
                dev.d(mu0 - h, mu0 + h) + dev.d(mu0 - h, mu0 - h)) /
               (4.0 * h * h);
      },
      h2);
  const double scale = std::fabs(dyy);
  if (!(dyy > 0.0))
    rep.failures.push_back("d2_yy d(mu;mu) not strictly positive");
  if (!(std::fabs(dyy - dmm) <= 1e-5 * scale))
    rep.failures.push_back("d2_yy != d2_mumu on the diagonal");
  if (!(std::fabs(dyy + dmy) <= 1e-5 * scale))
    rep.failures.push_back("d2_yy != -d2_muy on the diagonal");
  rep.common_second_derivative = dyy;
  rep.pass = rep.failures.empty();
  return rep;
}

double saddlepoint_log_pdf(const UnitDeviance& dev, double y, double mu,
                           double sigma2) {
  if (!(sigma2 > 0.0))
    throw std::domain_error("saddlepoint_log_pdf: sigma2 must be positive");
  if (!dev.in_omega(y)) {
    if (dev.in_support(y))
      throw std::domain_error(
          "saddlepoint_log_pdf: y in C but outside Omega; the approximation "
          "is defined on Omega only");
    throw std::domain_error("saddlepoint_log_pdf: y outside the support");
  }
  if (!dev.in_omega(mu))
    throw std::domain_error("saddlepoint_log_pdf: mu outside Omega");
  const double v = variance_function(dev, y);
  return -0.5 * (kLn2Pi + std::log(sigma2 * v)) -
         dev.d(y, mu) / (2.0 * sigma2);
}

std::vector<std::pair<double, double>> deviance_check_grid(double y_lo,
                                                           double y_hi,
                                                           double mu_lo,
                                                           double mu_hi,
                                                           int n) {
  std::vector<std::pair<double, double>> grid;
  grid.reserve(static_cast<std::size_t>(n) * n + n);
  for (int i = 0; i < n; ++i) {
    const double y = y_lo + (y_hi - y_lo) * i / (n - 1.0);
    for (int j = 0; j < n; ++j) {
      const double mu = mu_lo + (mu_hi - mu_lo) * j / (n - 1.0);
      grid.emplace_back(y, mu);
    }
  }
  // Diagonal points, exactly y == mu.
  const double lo = std::max(y_lo, mu_lo), hi = std::min(y_hi, mu_hi);
  for (int i = 0; i < n; ++i) {
    const double y = lo + (hi - lo) * i / (n - 1.0);
    grid.emplace_back(y, y);
  }
  return grid;
}

}  // namespace dispersia
