#include "dispersia/catalog.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "dispersia/specfun.hpp"

namespace dispersia {
namespace {

using quad::Interval;
using specfun::bessel_i0;
using specfun::bessel_k;
using specfun::ln_abs_gamma_complex_sq;
using specfun::ln_beta;
using specfun::ln_gamma;

constexpr double kPi = 3.14159265358979323846;
constexpr double kLn2Pi = 1.8378770664093454836;

double require_shape(const std::map<std::string, double>& shape,
                     const std::string& key, double fallback) {
  auto it = shape.find(key);
  return it == shape.end() ? fallback : it->second;
}

// ln(lambda^lambda e^-lambda / Gamma(lambda)), the gamma-family prefactor.
double gamma_prefactor(double lambda) {
  return lambda * std::log(lambda) - lambda - ln_gamma(lambda);
}

CatalogEntry base_entry(const std::string& name, Interval support,
                        double omega_lo, double omega_hi) {
  CatalogEntry e;
  e.name = name;
  e.support = support;
  e.omega_lo = omega_lo;
  e.omega_hi = omega_hi;
  e.deviance.support = support;
  e.deviance.omega_lo = omega_lo;
  e.deviance.omega_hi = omega_hi;
  return e;
}

// Attach the closed-form diagonal derivative table to the deviance.
void attach_derivatives(CatalogEntry& e) {
  const auto v = e.variance_formula;
  e.deviance.closed_form_diagonal[2] = [v](double mu0) { return 2.0 / v(mu0); };
  e.deviance.closed_form_diagonal[3] = e.d3_formula;
  e.deviance.closed_form_diagonal[4] = e.d4_formula;
}

CatalogEntry make_normal() {
  CatalogEntry e = base_entry("normal", Interval::infinite(),
                              -std::numeric_limits<double>::infinity(),
                              std::numeric_limits<double>::infinity());
  e.deviance.d = [](double y, double mu) { return (y - mu) * (y - mu); };
  e.log_normalizer = [](double, double sigma2) {
    return -0.5 * (kLn2Pi + std::log(sigma2));
  };
  e.parameter_map = "sigma2 is the native dispersion";
  e.variance_formula = [](double) { return 1.0; };
  e.d3_formula = [](double) { return 0.0; };
  e.d4_formula = [](double) { return 0.0; };
  e.theorem_order = 4;
  e.proper_dm = true;
  e.exponential_dm = true;
  e.constant_formula = "1";
  e.variance_formula_text = "V(mu0) = 1";
  e.default_mu0 = 0.0;
  e.compact_lo = -2.0;
  e.compact_hi = 2.0;
  e.check_mu0 = {-1.5, -0.5, 0.5, 1.0, 1.5};
  return e;
}

CatalogEntry make_student_t() {
  CatalogEntry e = base_entry("student_t", Interval::infinite(),
                              -std::numeric_limits<double>::infinity(),
                              std::numeric_limits<double>::infinity());
  e.deviance.d = [](double y, double mu) {
    const double u = y - mu;
    return std::log1p(u * u);
  };
  e.log_normalizer = [](double, double sigma2) {
    const double n = 1.0 / sigma2 - 1.0;
    return -ln_beta(0.5 * n, 0.5);
  };
  e.parameter_map = "sigma2 = 1/(n+1), n the degrees of freedom";
  e.native_name = "n";
  e.sigma2_max = 1.0;
  e.variance_formula = [](double) { return 1.0; };
  e.d3_formula = [](double) { return 0.0; };
  e.d4_formula = [](double) { return -12.0; };
  e.theorem_order = 4;
  e.proper_dm = true;
  e.paper_constant = [](double, double beta) { return std::exp(beta / 4.0); };
  e.constant_formula = "exp(beta/4)";
  e.variance_formula_text = "V(mu0) = 1";
  e.default_mu0 = 0.0;
  e.compact_lo = -2.0;
  e.compact_hi = 2.0;
  e.check_mu0 = {-1.5, -0.5, 0.5, 1.0, 1.5};
  return e;
}

CatalogEntry make_generalized_student_t(double s) {
  if (!(s > 0.0))
    throw std::domain_error("generalized_student_t: shape s must be positive");
  CatalogEntry e = base_entry("generalized_student_t", Interval::infinite(),
                              -std::numeric_limits<double>::infinity(),
                              std::numeric_limits<double>::infinity());
  e.deviance.d = [s](double y, double mu) {
    const double u = y - mu;
    return std::log1p(u * u / s);
  };
  e.log_normalizer = [s](double, double sigma2) {
    const double r = 1.0 / sigma2 - 1.0;
    return -0.5 * std::log(s) - ln_beta(0.5 * r, 0.5);
  };
  e.parameter_map = "sigma2 = 1/(r+1), s fixed";
  e.native_name = "r";
  e.sigma2_max = 1.0;
  e.fixed_shape_params = {{"s", s}};
  e.variance_formula = [s](double) { return s; };
  e.d3_formula = [](double) { return 0.0; };
  e.d4_formula = [s](double) { return -12.0 / (s * s); };
  e.theorem_order = 4;
  e.proper_dm = true;
  e.paper_constant = [s](double, double beta) {
    return std::exp(beta / (4.0 * s * s));
  };
  e.constant_formula = "exp(beta/(4 s^2))";
  e.variance_formula_text = "V(mu0) = s";
  e.default_mu0 = 0.0;
  e.compact_lo = -2.0;
  e.compact_hi = 2.0;
  e.check_mu0 = {-1.5, -0.5, 0.5, 1.0, 1.5};
  return e;
}

CatalogEntry make_gamma() {
  CatalogEntry e = base_entry("gamma", Interval::semi_infinite(0.0), 0.0,
                              std::numeric_limits<double>::infinity());
  e.deviance.d = [](double y, double mu) {
    return 2.0 * (y / mu - std::log(y / mu) - 1.0);
  };
  e.log_normalizer = [](double y, double sigma2) {
    return gamma_prefactor(1.0 / sigma2) - std::log(y);
  };
  e.parameter_map = "sigma2 = 1/lambda, lambda the precision";
  e.native_name = "lambda";
  e.variance_formula = [](double mu0) { return mu0 * mu0; };
  e.d3_formula = [](double mu0) { return -4.0 / (mu0 * mu0 * mu0); };
  e.d4_formula = [](double mu0) { return 12.0 / (mu0 * mu0 * mu0 * mu0); };
  e.theorem_order = 3;
  e.proper_dm = true;
  e.exponential_dm = true;
  e.paper_constant = [](double mu0, double beta) {
    return std::exp(beta / (3.0 * mu0 * mu0 * mu0));
  };
  e.constant_formula = "exp(beta/(3 mu0^3))";
  e.variance_formula_text = "V(mu0) = mu0^2";
  e.default_mu0 = 1.0;
  e.compact_lo = 0.4;
  e.compact_hi = 2.5;
  e.check_mu0 = {0.5, 0.8, 1.0, 1.5, 2.0};
  return e;
}

CatalogEntry make_reciprocal_gamma() {
  CatalogEntry e = base_entry("reciprocal_gamma", Interval::semi_infinite(0.0),
                              0.0, std::numeric_limits<double>::infinity());
  e.deviance.d = [](double y, double mu) {
    return 2.0 * (mu / y - std::log(mu / y) - 1.0);
  };
  e.log_normalizer = [](double y, double sigma2) {
    return gamma_prefactor(1.0 / sigma2) - std::log(y);
  };
  e.parameter_map = "sigma2 = 1/lambda";
  e.native_name = "lambda";
  e.variance_formula = [](double mu0) { return mu0 * mu0; };
  e.d3_formula = [](double mu0) { return -8.0 / (mu0 * mu0 * mu0); };
  e.d4_formula = [](double mu0) { return 36.0 / (mu0 * mu0 * mu0 * mu0); };
  e.theorem_order = 3;
  e.proper_dm = true;
  e.paper_constant = [](double mu0, double beta) {
    return std::exp(2.0 * beta / (3.0 * mu0 * mu0 * mu0));
  };
  e.constant_formula = "exp(2 beta/(3 mu0^3))";
  e.variance_formula_text = "V(mu0) = mu0^2";
  e.default_mu0 = 1.0;
  e.compact_lo = 0.4;
  e.compact_hi = 2.5;
  e.check_mu0 = {0.5, 0.8, 1.0, 1.5, 2.0};
  return e;
}

CatalogEntry make_log_gamma() {
  CatalogEntry e = base_entry("log_gamma", Interval::infinite(),
                              -std::numeric_limits<double>::infinity(),
                              std::numeric_limits<double>::infinity());
  e.deviance.d = [](double y, double mu) {
    return 2.0 * (mu - y + std::expm1(y - mu));
  };
  e.log_normalizer = [](double, double sigma2) {
    return gamma_prefactor(1.0 / sigma2);
  };
  e.parameter_map = "sigma2 = 1/lambda";
  e.native_name = "lambda";
  e.variance_formula = [](double) { return 1.0; };
  e.d3_formula = [](double) { return 2.0; };
  e.d4_formula = [](double) { return 2.0; };
  e.theorem_order = 3;
  e.proper_dm = true;
  e.paper_constant = [](double, double beta) { return std::exp(-beta / 6.0); };
  e.constant_formula = "exp(-beta/6)";
  e.variance_formula_text = "V(mu0) = 1";
  e.default_mu0 = 0.0;
  e.compact_lo = -2.0;
  e.compact_hi = 2.0;
  e.check_mu0 = {-1.5, -0.5, 0.5, 1.0, 1.5};
  return e;
}

CatalogEntry make_ghs() {
  CatalogEntry e = base_entry("ghs", Interval::infinite(),
                              -std::numeric_limits<double>::infinity(),
                              std::numeric_limits<double>::infinity());
  e.deviance.d = [](double y, double mu) {
    return 2.0 * y * (std::atan(y) - std::atan(mu)) +
           std::log1p(mu * mu) - std::log1p(y * y);
  };
  e.log_normalizer = [](double y, double sigma2) {
    const double lambda = 1.0 / sigma2;
    return std::log(lambda) + (lambda - 2.0) * std::log(2.0) - std::log(kPi) -
           ln_gamma(lambda) +
           ln_abs_gamma_complex_sq(0.5 * lambda, 0.5 * lambda * y) +
           lambda * (y * std::atan(y) - 0.5 * std::log1p(y * y));
  };
  e.parameter_map = "sigma2 = 1/lambda";
  e.native_name = "lambda";
  e.variance_formula = [](double mu0) { return 1.0 + mu0 * mu0; };
  e.d3_formula = [](double mu0) {
    const double q = 1.0 + mu0 * mu0;
    return -4.0 * mu0 / (q * q);
  };
  e.d4_formula = [](double mu0) {
    const double q = 1.0 + mu0 * mu0;
    return (12.0 * mu0 * mu0 - 4.0) / (q * q * q);
  };
  e.theorem_order = 3;
  e.exponential_dm = true;
  e.paper_constant = [](double mu0, double beta) {
    const double q = 1.0 + mu0 * mu0;
    return std::exp(beta * mu0 / (3.0 * q * q));
  };
  e.constant_formula = "exp(beta mu0/(3 (1+mu0^2)^2))";
  e.variance_formula_text = "V(mu0) = 1 + mu0^2";
  e.default_mu0 = 0.5;
  e.compact_lo = -2.0;
  e.compact_hi = 2.0;
  e.check_mu0 = {0.25, 0.5, 0.75, 1.0, 1.25};
  return e;
}

CatalogEntry make_inverse_gaussian() {
  CatalogEntry e = base_entry("inverse_gaussian", Interval::semi_infinite(0.0),
                              0.0, std::numeric_limits<double>::infinity());
  e.deviance.d = [](double y, double mu) {
    const double u = y - mu;
    return u * u / (y * mu * mu);
  };
  e.log_normalizer = [](double y, double sigma2) {
    return -0.5 * (kLn2Pi + std::log(sigma2)) - 1.5 * std::log(y);
  };
  e.parameter_map = "sigma2 is the native dispersion";
  e.variance_formula = [](double mu0) { return mu0 * mu0 * mu0; };
  e.d3_formula = [](double mu0) {
    const double m2 = mu0 * mu0;
    return -6.0 / (m2 * m2);
  };
  e.d4_formula = [](double mu0) {
    const double m2 = mu0 * mu0;
    return 24.0 / (m2 * m2 * mu0);
  };
  e.theorem_order = 3;
  e.proper_dm = true;
  e.exponential_dm = true;
  e.paper_constant = [](double mu0, double beta) {
    const double m2 = mu0 * mu0;
    return std::exp(beta / (2.0 * m2 * m2));
  };
  e.constant_formula = "exp(beta/(2 mu0^4))";
  e.variance_formula_text = "V(mu0) = mu0^3";
  e.default_mu0 = 1.0;
  e.compact_lo = 0.4;
  e.compact_hi = 2.5;
  e.check_mu0 = {0.5, 0.8, 1.0, 1.5, 2.0};
  return e;
}

CatalogEntry make_reciprocal_inverse_gaussian() {
  CatalogEntry e =
      base_entry("reciprocal_inverse_gaussian", Interval::semi_infinite(0.0),
                 0.0, std::numeric_limits<double>::infinity());
  e.deviance.d = [](double y, double mu) {
    const double u = y - mu;
    return u * u / y;
  };
  e.log_normalizer = [](double y, double sigma2) {
    return -0.5 * (kLn2Pi + std::log(sigma2)) - 0.5 * std::log(y);
  };
  e.parameter_map = "sigma2 = 1/lambda";
  e.native_name = "lambda";
  e.variance_formula = [](double mu0) { return mu0; };
  e.d3_formula = [](double mu0) { return -6.0 / (mu0 * mu0); };
  e.d4_formula = [](double mu0) { return 24.0 / (mu0 * mu0 * mu0); };
  e.theorem_order = 3;
  e.proper_dm = true;
  e.paper_constant = [](double mu0, double beta) {
    return std::exp(beta / (2.0 * mu0 * mu0));
  };
  e.constant_formula = "exp(beta/(2 mu0^2))";
  e.variance_formula_text = "V(mu0) = mu0";
  e.default_mu0 = 1.0;
  e.compact_lo = 0.4;
  e.compact_hi = 2.5;
  e.check_mu0 = {0.5, 0.8, 1.0, 1.5, 2.0};
  return e;
}

CatalogEntry make_hyperbola() {
  CatalogEntry e = base_entry("hyperbola", Interval::semi_infinite(0.0), 0.0,
                              std::numeric_limits<double>::infinity());
  e.deviance.d = [](double y, double mu) {
    const double u = y - mu;
    return u * u / (y * mu);
  };
  e.log_normalizer = [](double y, double sigma2) {
    const double lambda = 1.0 / sigma2;
    return -lambda - std::log(2.0) - bessel_k(0.0, lambda).log_value -
           std::log(y);
  };
  e.parameter_map = "sigma2 = 1/lambda";
  e.native_name = "lambda";
  e.variance_formula = [](double mu0) { return mu0 * mu0; };
  e.d3_formula = [](double mu0) { return -6.0 / (mu0 * mu0 * mu0); };
  e.d4_formula = [](double mu0) { return 24.0 / (mu0 * mu0 * mu0 * mu0); };
  e.theorem_order = 3;
  e.proper_dm = true;
  e.paper_constant = [](double mu0, double beta) {
    return std::exp(beta / (2.0 * mu0 * mu0 * mu0));
  };
  e.constant_formula = "exp(beta/(2 mu0^3))";
  e.variance_formula_text = "V(mu0) = mu0^2";
  e.default_mu0 = 1.0;
  e.compact_lo = 0.4;
  e.compact_hi = 2.5;
  e.check_mu0 = {0.5, 0.8, 1.0, 1.5, 2.0};
  return e;
}

CatalogEntry make_hyperbolic(double b) {
  if (!std::isfinite(b))
    throw std::domain_error("hyperbolic: shape b must be finite");
  const double a = std::sqrt(1.0 + b * b);
  CatalogEntry e = base_entry("hyperbolic", Interval::infinite(),
                              -std::numeric_limits<double>::infinity(),
                              std::numeric_limits<double>::infinity());
  e.deviance.d = [a, b](double y, double mu) {
    const double u = y - mu;
    return a * std::sqrt(1.0 + u * u) - b * u - a;
  };
  // The exponent carries d/(2 sigma2) = p*d with p = lambda/2, so the
  // normalizer is e^{-p a} / (2 a K_1(p)).
  e.log_normalizer = [a](double, double sigma2) {
    const double p = 0.5 / sigma2;
    return -p * a - std::log(2.0 * a) - bessel_k(1.0, p).log_value;
  };
  e.parameter_map = "sigma2 = 1/lambda, b fixed, a = sqrt(1+b^2)";
  e.native_name = "lambda";
  e.fixed_shape_params = {{"b", b}};
  e.variance_formula = [a](double) { return 2.0 / a; };
  e.d3_formula = [](double) { return 0.0; };
  e.d4_formula = [a](double) { return -3.0 * a; };
  e.theorem_order = 4;
  e.proper_dm = true;
  e.paper_constant = [a](double, double beta) {
    return std::exp(a * beta / 4.0);
  };
  e.constant_formula = "exp(a beta/16)";
  e.variance_formula_text = "V(mu0) = 2/a";
  e.default_mu0 = 0.0;
  e.compact_lo = -2.0;
  e.compact_hi = 2.0;
  e.check_mu0 = {-1.5, -0.5, 0.5, 1.0, 1.5};
  return e;
}

CatalogEntry make_simplex() {
  CatalogEntry e = base_entry("simplex", Interval::finite(0.0, 1.0), 0.0, 1.0);
  e.deviance.d = [](double y, double mu) {
    const double u = y - mu;
    const double m = mu * (1.0 - mu);
    return u * u / (y * (1.0 - y) * m * m);
  };
  e.log_normalizer = [](double y, double sigma2) {
    return -0.5 * (kLn2Pi + std::log(sigma2)) -
           1.5 * std::log(y * (1.0 - y));
  };
  e.parameter_map = "sigma2 is the native dispersion";
  e.variance_formula = [](double mu0) {
    const double m = mu0 * (1.0 - mu0);
    return m * m * m;
  };
  e.d3_formula = [](double mu0) {
    const double m = mu0 * (1.0 - mu0);
    return 6.0 * (2.0 * mu0 - 1.0) / (m * m * m * m);
  };
  e.d4_formula = [](double mu0) {
    const double om = 1.0 - mu0;
    const double m = mu0 * om;
    return 24.0 * (om * om * om + mu0 * mu0 * mu0) / (m * m * m * m * m);
  };
  e.theorem_order = 3;
  e.proper_dm = true;
  e.paper_constant = [](double mu0, double beta) {
    const double m = mu0 * (1.0 - mu0);
    return std::exp(-beta * (mu0 - 0.5) / (m * m * m * m));
  };
  e.constant_formula = "exp(-beta (2 mu0 - 1)/(2 (mu0 (1-mu0))^4))";
  e.variance_formula_text = "V(mu0) = (mu0 (1-mu0))^3";
  e.default_mu0 = 0.3;
  e.compact_lo = 0.1;
  e.compact_hi = 0.9;
  e.check_mu0 = {0.15, 0.3, 0.45, 0.6, 0.75};
  return e;
}

CatalogEntry make_von_mises() {
  CatalogEntry e =
      base_entry("von_mises", Interval::finite(0.0, 2.0 * kPi), 0.0, 2.0 * kPi);
  e.deviance.d = [](double y, double mu) {
    return 2.0 * (1.0 - std::cos(y - mu));
  };
  e.log_normalizer = [](double, double sigma2) {
    const double lambda = 1.0 / sigma2;
    return lambda - std::log(2.0 * kPi) - bessel_i0(lambda).log_value;
  };
  e.parameter_map = "sigma2 is the native dispersion (1/concentration)";
  e.variance_formula = [](double) { return 1.0; };
  e.d3_formula = [](double) { return 0.0; };
  e.d4_formula = [](double) { return -2.0; };
  e.theorem_order = 4;
  e.proper_dm = true;
  e.paper_constant = [](double, double beta) { return std::exp(beta / 24.0); };
  e.constant_formula = "exp(beta/24)";
  e.variance_formula_text = "V(mu0) = 1";
  e.default_mu0 = kPi;
  e.compact_lo = 0.5 * kPi;
  e.compact_hi = 1.5 * kPi;
  e.check_mu0 = {0.5 * kPi, 0.75 * kPi, kPi, 1.25 * kPi, 1.5 * kPi};
  return e;
}

CatalogEntry make_leipnik() {
  CatalogEntry e = base_entry("leipnik", Interval::finite(-1.0, 1.0), -1.0, 1.0);
  e.deviance.d = [](double y, double mu) {
    return std::log((1.0 - 2.0 * y * mu + mu * mu) / (1.0 - y * y));
  };
  e.log_normalizer = [](double y, double sigma2) {
    const double lambda = 1.0 / sigma2;
    return -0.5 * std::log1p(-y * y) - ln_beta(0.5 * (lambda + 1.0), 0.5);
  };
  e.parameter_map = "sigma2 = 1/lambda";
  e.native_name = "lambda";
  e.variance_formula = [](double mu0) { return 1.0 - mu0 * mu0; };
  e.d3_formula = [](double mu0) {
    const double q = 1.0 - mu0 * mu0;
    return 12.0 * mu0 / (q * q);
  };
  e.d4_formula = [](double mu0) {
    const double q = 1.0 - mu0 * mu0;
    return 12.0 * (1.0 + 7.0 * mu0 * mu0) / (q * q * q);
  };
  e.theorem_order = 3;
  e.proper_dm = true;
  e.paper_constant = [](double mu0, double beta) {
    const double q = 1.0 - mu0 * mu0;
    return std::exp(-beta * mu0 / (q * q));
  };
  e.constant_formula = "exp(-beta mu0/(1-mu0^2)^2)";
  e.variance_formula_text = "V(mu0) = 1 - mu0^2";
  e.default_mu0 = 0.3;
  e.compact_lo = -0.8;
  e.compact_hi = 0.8;
  e.check_mu0 = {-0.6, -0.3, 0.3, 0.45, 0.6};
  return e;
}

CatalogEntry make_transformed_leipnik() {
  CatalogEntry e =
      base_entry("transformed_leipnik", Interval::finite(0.0, 1.0), 0.0, 1.0);
  e.deviance.d = [](double y, double mu) {
    const double u = y - mu;
    return std::log1p(u * u / (y * (1.0 - y)));
  };
  e.log_normalizer = [](double y, double sigma2) {
    const double lambda = 1.0 / sigma2;
    return -0.5 * std::log(y * (1.0 - y)) -
           ln_beta(0.5 * (lambda + 1.0), 0.5);
  };
  e.parameter_map = "sigma2 = 1/lambda";
  e.native_name = "lambda";
  e.variance_formula = [](double mu0) { return mu0 * (1.0 - mu0); };
  e.d3_formula = [](double mu0) {
    const double m = mu0 * (1.0 - mu0);
    return 6.0 * (2.0 * mu0 - 1.0) / (m * m);
  };
  e.d4_formula = [](double mu0) {
    const double m = mu0 * (1.0 - mu0);
    const double c = 1.0 - 2.0 * mu0;
    return 12.0 / (m * m) + 24.0 * c * c / (m * m * m);
  };
  e.theorem_order = 3;
  e.proper_dm = true;
  e.paper_constant = [](double mu0, double beta) {
    const double m = mu0 * (1.0 - mu0);
    return std::exp(-beta * (2.0 * mu0 - 1.0) / (12.0 * m * m));
  };
  e.constant_formula = "exp(-beta (2 mu0 - 1)/(2 (mu0 (1-mu0))^2))";
  e.variance_formula_text = "V(mu0) = mu0 (1-mu0)";
  e.default_mu0 = 0.3;
  e.compact_lo = 0.1;
  e.compact_hi = 0.9;
  e.check_mu0 = {0.15, 0.3, 0.45, 0.6, 0.75};
  return e;
}

CatalogEntry make_gig_modified(double a) {
  if (!(a >= -1.0 && a <= 1.0))
    throw std::domain_error("gig_modified: shape a must lie in [-1, 1]");
  CatalogEntry e = base_entry("gig_modified", Interval::semi_infinite(0.0), 0.0,
                              std::numeric_limits<double>::infinity());
  e.deviance.d = [a](double y, double mu) {
    return 2.0 * a * std::log(mu / y) + (y / mu) * (1.0 + a) +
           (mu / y) * (1.0 - a) - 2.0;
  };
  if (a == 1.0 || a == -1.0) {
    // Degenerates to the gamma (a = 1) / reciprocal gamma (a = -1) family.
    e.log_normalizer = [](double y, double sigma2) {
      return gamma_prefactor(1.0 / sigma2) - std::log(y);
    };
  } else {
    e.log_normalizer = [a](double y, double sigma2) {
      const double lambda = 1.0 / sigma2;
      return 0.5 * lambda * a * std::log((1.0 + a) / (1.0 - a)) - lambda -
             std::log(2.0 * y) -
             bessel_k(lambda * a, lambda * std::sqrt(1.0 - a * a)).log_value;
    };
  }
  e.parameter_map = "sigma2 = 1/lambda, a fixed in [-1, 1]";
  e.native_name = "lambda";
  e.fixed_shape_params = {{"a", a}};
  e.variance_formula = [](double mu0) { return mu0 * mu0; };
  e.d3_formula = [a](double mu0) {
    return (2.0 * a - 6.0) / (mu0 * mu0 * mu0);
  };
  e.d4_formula = [a](double mu0) {
    const double m2 = mu0 * mu0;
    return (24.0 - 12.0 * a) / (m2 * m2);
  };
  e.theorem_order = 3;
  e.proper_dm = true;
  e.paper_constant = [a](double mu0, double beta) {
    return std::exp((3.0 - a) * beta / (6.0 * mu0 * mu0 * mu0));
  };
  e.constant_formula = "exp((3-a) beta/(6 mu0^3))";
  e.variance_formula_text = "V(mu0) = mu0^2";
  e.default_mu0 = 1.0;
  e.compact_lo = 0.4;
  e.compact_hi = 2.5;
  e.check_mu0 = {0.5, 0.8, 1.0, 1.5, 2.0};
  return e;
}

void check_sigma2(const CatalogEntry& e, double sigma2) {
  if (!(sigma2 > 0.0))
    throw std::domain_error(e.name + ": sigma2 must be positive");
  if (e.sigma2_max > 0.0 && !(sigma2 < e.sigma2_max))
    throw std::domain_error(e.name + ": sigma2 = " + std::to_string(sigma2) +
                            " maps to an invalid native parameter (" +
                            e.parameter_map + ")");
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"normal",
          "student_t",
          "generalized_student_t",
          "gamma",
          "reciprocal_gamma",
          "log_gamma",
          "ghs",
          "inverse_gaussian",
          "reciprocal_inverse_gaussian",
          "hyperbola",
          "hyperbolic",
          "simplex",
          "von_mises",
          "leipnik",
          "transformed_leipnik",
          "gig_modified"};
}

CatalogEntry lookup(const std::string& name,
                    const std::map<std::string, double>& shape) {
  CatalogEntry e;
  if (name == "normal") e = make_normal();
  else if (name == "student_t") e = make_student_t();
  else if (name == "generalized_student_t")
    e = make_generalized_student_t(require_shape(shape, "s", 2.0));
  else if (name == "gamma") e = make_gamma();
  else if (name == "reciprocal_gamma") e = make_reciprocal_gamma();
  else if (name == "log_gamma") e = make_log_gamma();
  else if (name == "ghs") e = make_ghs();
  else if (name == "inverse_gaussian") e = make_inverse_gaussian();
  else if (name == "reciprocal_inverse_gaussian")
    e = make_reciprocal_inverse_gaussian();
  else if (name == "hyperbola") e = make_hyperbola();
  else if (name == "hyperbolic")
    e = make_hyperbolic(require_shape(shape, "b", 0.0));
  else if (name == "simplex") e = make_simplex();
  else if (name == "von_mises") e = make_von_mises();
  else if (name == "leipnik") e = make_leipnik();
  else if (name == "transformed_leipnik") e = make_transformed_leipnik();
  else if (name == "gig_modified")
    e = make_gig_modified(require_shape(shape, "a", 0.5));
  else {
    std::string names;
    for (const auto& n : catalog_names()) names += " " + n;
    throw std::domain_error("unknown catalog entry '" + name +
                            "'; valid names:" + names);
  }
  attach_derivatives(e);
  return e;
}

double exact_log_pdf(const CatalogEntry& e, double y, double mu,
                     double sigma2) {
  check_sigma2(e, sigma2);
  if (!e.support.contains(y))
    throw std::domain_error(e.name + ": y = " + std::to_string(y) +
                            " outside the support");
  if (!(mu > e.omega_lo && mu < e.omega_hi))
    throw std::domain_error(e.name + ": mu outside Omega");
  return e.log_normalizer(y, sigma2) - e.deviance.d(y, mu) / (2.0 * sigma2);
}

LimitConstant limit_constant(const CatalogEntry& e, double mu0, double beta) {
  if (!(mu0 > e.omega_lo && mu0 < e.omega_hi))
    throw std::domain_error(e.name + ": mu0 outside Omega");
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw std::domain_error("limit_constant: beta must be finite and >= 0");
  int k = e.theorem_order;
  bool elevated = false;
  double dkd = (k == 3) ? e.d3_formula(mu0) : e.d4_formula(mu0);
  if (k == 3) {
    const double scale = 1.0 + std::fabs(e.d4_formula(mu0));
    if (std::fabs(dkd) < 1e-10 * scale) {
      k = 4;
      dkd = e.d4_formula(mu0);
      elevated = true;
    }
  }
  if (std::fabs(dkd) < 1e-300 && beta > 0.0)
    throw std::domain_error(e.name + ": degenerate point at mu0 = " +
                            std::to_string(mu0) +
                            " (all diagonal derivatives up to order 4 vanish)");
  const double kfact = (k == 3) ? 6.0 : 24.0;
  const double value = std::exp(-beta * dkd / (2.0 * kfact));
  return {k, beta, dkd, value, elevated};
}

TableComparison verify_against_paper_table(const CatalogEntry& e, double mu0,
                                           double beta) {
  if (!e.paper_constant.has_value())
    return {TableComparison::Status::Match, 1.0, 1.0,
            "no printed constant for this family"};
  const LimitConstant lc = limit_constant(e, mu0, beta);
  const double printed = (*e.paper_constant)(mu0, beta);
  const double rel = std::fabs(lc.value - printed) /
                     std::max(std::fabs(lc.value), 1e-300);
  if (rel <= 1e-9)
    return {TableComparison::Status::Match, lc.value, printed, ""};
  return {TableComparison::Status::Discrepancy, lc.value, printed,
          "theorem-derived constant " + e.constant_formula +
              " disagrees with the printed table value"};
}

double standardized_log_pdf(const CatalogEntry& e, double x, double mu,
                            double mu0, double sigma2) {
  check_sigma2(e, sigma2);
  const double sigma = std::sqrt(sigma2);
  const double y = mu0 + sigma * x;
  if (!e.support.contains(y))
    throw std::domain_error(e.name + ": transformed point y = " +
                            std::to_string(y) + " exits the support");
  return 0.5 * std::log(sigma2) + exact_log_pdf(e, y, mu0 + sigma * mu, sigma2);
}

std::string describe_json(const CatalogEntry& e, std::optional<double> mu0) {
  nlohmann::json j;
  j["name"] = e.name;
  switch (e.support.kind) {
    case Interval::Kind::Finite:
      j["support"] = {{"kind", "finite"}, {"a", e.support.a}, {"b", e.support.b}};
      break;
    case Interval::Kind::SemiInfinite:
      j["support"] = {{"kind", "semi_infinite"}, {"a", e.support.a}};
      break;
    case Interval::Kind::Infinite:
      j["support"] = {{"kind", "infinite"}};
      break;
  }
  j["parameter_map"] = e.parameter_map;
  j["variance_formula_text"] = e.variance_formula_text;
  j["k"] = e.theorem_order;
  j["class_flags"] = {{"proper_dm", e.proper_dm},
                      {"exponential_dm", e.exponential_dm}};
  if (!e.fixed_shape_params.empty()) j["shape_params"] = e.fixed_shape_params;
  j["constant_formula"] = e.constant_formula;
  if (mu0.has_value()) {
    j["mu0"] = *mu0;
    j["V"] = e.variance_formula(*mu0);
    j["d2"] = 2.0 / e.variance_formula(*mu0);
    j["d3"] = e.d3_formula(*mu0);
    j["d4"] = e.d4_formula(*mu0);
  }
  return j.dump(2);
}

}  // namespace dispersia
