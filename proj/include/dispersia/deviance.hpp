#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dispersia/quadrature.hpp"

// The unit-deviance abstraction: a nonnegative function d(y; mu) on C x Omega
// vanishing exactly on the diagonal, with strictly positive diagonal
// curvature. Deviances are treated as black-box evaluables; closed-form
// diagonal derivatives, when present, are optional accelerators.

namespace dispersia {

struct UnitDeviance {
  quad::Interval support;            // C
  double omega_lo, omega_hi;         // Omega, open
  std::function<double(double, double)> d;  // d(y, mu)
  // order (2..4) -> mu0 -> diagonal derivative d^k_{y..y} d(mu0; mu0)
  std::map<int, std::function<double(double)>> closed_form_diagonal;

  bool in_support(double y) const { return support.contains(y); }
  bool in_omega(double v) const { return v > omega_lo && v < omega_hi; }
};

struct DevianceViolation {
  double y, mu;
  double value;
  std::string what;
};

// Checks d(y; y) = 0 and d(y; mu) > 0 for y != mu over the given pairs.
// Empty result means pass. The zero test is scaled by the local curvature.
std::vector<DevianceViolation> check_unit_deviance(
    const UnitDeviance& dev, const std::vector<std::pair<double, double>>& grid);

// Central finite difference in y at fixed second argument mu0, Richardson
// extrapolated. Orders 2..4.
double diagonal_derivative_fd(const UnitDeviance& dev, double mu0, int order);

// V(mu0) = 2 / d2; closed form when available, finite difference otherwise.
double variance_function(const UnitDeviance& dev, double mu0);

struct RegularityReport {
  bool pass = true;
  double common_second_derivative = 0.0;
  std::vector<std::string> failures;
};

// Verifies the first-order conditions and the three equivalent expressions
// for the diagonal second derivative, by finite differences.
RegularityReport check_regularity(const UnitDeviance& dev, double mu0);

// -log(2 pi sigma2 V(y))/2 - d(y; mu)/(2 sigma2); defined for y in Omega only.
double saddlepoint_log_pdf(const UnitDeviance& dev, double y, double mu,
                           double sigma2);

// Uniform (y, mu) grid over a compact sub-rectangle, diagonal included.
std::vector<std::pair<double, double>> deviance_check_grid(double y_lo,
                                                           double y_hi,
                                                           double mu_lo,
                                                           double mu_hi,
                                                           int n);

}  // namespace dispersia
