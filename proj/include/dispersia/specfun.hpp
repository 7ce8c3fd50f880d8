#pragma once

// Special-function kernel: real/complex log-gamma, modified Bessel I0 and
// K_nu, all with log-scale results so callers can work far outside the
// range of double-precision magnitudes.

namespace dispersia::specfun {

// Linear-scale value plus natural log. The log is authoritative: value may
// round to 0 or +inf when the magnitude leaves double range.
struct SpecialValue {
  double value;
  double log_value;
};

// ln Gamma(x) for x > 0.
double ln_gamma(double x);

// ln B(a, b) for a, b > 0.
double ln_beta(double a, double b);

// Modified Bessel function I0(x), x >= 0.
SpecialValue bessel_i0(double x);

// Modified Bessel function of the third kind K_nu(x), x > 0, any real nu
// (K_{-nu} = K_nu).
SpecialValue bessel_k(double nu, double x);

// ln |Gamma(x + iy)|^2. Poles (y == 0, x a non-positive integer) are
// rejected.
double ln_abs_gamma_complex_sq(double x, double y);

}  // namespace dispersia::specfun
