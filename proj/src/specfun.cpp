#include "dispersia/specfun.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace dispersia::specfun {
namespace {

constexpr double kLn2Pi = 1.8378770664093454836;
constexpr double kPi = 3.14159265358979323846;

// Stirling series coefficients B_{2k} / (2k (2k-1)).
constexpr std::array<double, 9> kStirling = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
};

template <class T>
T stirling_series(T z) {
  T zi = T(1.0) / z;
  T zi2 = zi * zi;
  T sum = T(0.0);
  T p = zi;
  for (double c : kStirling) {
    sum += c * p;
    p *= zi2;
  }
  return sum;
}

// ln Gamma(z) by argument-shift into the Stirling region.
template <class T>
T lgamma_shifted(T z, double radius) {
  T corr(0.0);
  while (std::abs(z) < radius || std::real(z) < 0.5) {
    corr += std::log(z);
    z += T(1.0);
  }
  return (z - T(0.5)) * std::log(z) - z + T(0.5 * kLn2Pi) +
         stirling_series(z) - corr;
}

[[noreturn]] void domain_fail(const std::string& msg) {
  throw std::domain_error("specfun: " + msg);
}

// --- K_nu machinery ---------------------------------------------------------

// Series of Temme for K_mu(x), K_{mu+1}(x), 0 < x <= 2, |mu| <= 1/2.
// See Temme, J. Comput. Phys. 19 (1975).
void bessel_k_temme(double mu, double x, double& kmu, double& kmu1) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double mu2 = mu * mu;
  const double xh = 0.5 * x;

  // gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu), gam2 the even part.
  double gam1, gam2;
  if (std::fabs(mu) > 1e-3) {
    const double gp = 1.0 / std::tgamma(1.0 + mu);
    const double gm = 1.0 / std::tgamma(1.0 - mu);
    gam1 = (gm - gp) / (2.0 * mu);
    gam2 = 0.5 * (gm + gp);
  } else {
    // Taylor coefficients of 1/Gamma(1+z).
    constexpr double a1 = 0.57721566490153286061;
    constexpr double a2 = -0.65587807152025388108;
    constexpr double a3 = -0.04200263503409523553;
    constexpr double a4 = 0.16653861138229148950;
    constexpr double a5 = -0.04219773455554433675;
    gam1 = -(a1 + a3 * mu2 + a5 * mu2 * mu2);
    gam2 = 1.0 + a2 * mu2 + a4 * mu2 * mu2;
  }
  const double gampl = gam2 - mu * gam1;  // 1/Gamma(1+mu)
  const double gammi = gam2 + mu * gam1;  // 1/Gamma(1-mu)

  const double pimu = kPi * mu;
  const double fact = (std::fabs(pimu) < eps) ? 1.0 : pimu / std::sin(pimu);
  double d = -std::log(xh);
  double e = mu * d;
  const double fact2 = (std::fabs(e) < eps) ? 1.0 : std::sinh(e) / e;
  double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
  double sum = ff;
  e = std::exp(e);
  double p = 0.5 * e / gampl;
  double q = 0.5 / (e * gammi);
  double c = 1.0;
  d = xh * xh;
  double sum1 = p;
  int i = 1;
  for (; i <= 1000; ++i) {
    ff = (i * ff + p + q) / (i * i - mu2);
    c *= d / i;
    p /= (i - mu);
    q /= (i + mu);
    const double del = c * ff;
    sum += del;
    const double del1 = c * (p - i * ff);
    sum1 += del1;
    if (std::fabs(del) < std::fabs(sum) * eps) break;
  }
  if (i > 1000) domain_fail("bessel_k: Temme series failed to converge");
  kmu = sum;
  kmu1 = sum1 * 2.0 / x;
}

// Steed's continued fraction CF2 for x > 2: returns e^x K_mu and
// e^x K_{mu+1}.
void bessel_k_cf2(double mu, double x, double& kmu_s, double& kmu1_s) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double mu2 = mu * mu;
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25 - mu2;
  double q = a1, c = a1, a = -a1;
  double s = 1.0 + q * delh;
  int i = 2;
  for (; i <= 100000; ++i) {
    a -= 2 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::fabs(dels / s) < eps) break;
  }
  if (i > 100000) domain_fail("bessel_k: continued fraction failed to converge");
  h = a1 * h;
  kmu_s = std::sqrt(kPi / (2.0 * x)) / s;
  kmu1_s = kmu_s * (mu + x + 0.5 - h) / x;
}

// Coefficient tables of the Debye polynomials u_k(t), built from
// u_{k+1} = t^2 (1 - t^2) u_k' / 2 + (1/8) \int_0^t (1 - 5 s^2) u_k ds.
constexpr int kDebyeOrder = 9;

std::array<std::vector<double>, kDebyeOrder> make_debye_u() {
  std::array<std::vector<double>, kDebyeOrder> u;
  u[0] = {1.0};
  for (int k = 0; k + 1 < kDebyeOrder; ++k) {
    const auto& w = u[k];
    const int n = static_cast<int>(w.size());
    std::vector<double> next(w.size() + 3, 0.0);
    // t^2 (1 - t^2) u' / 2
    for (int j = 1; j < n; ++j) {
      next[j + 1] += 0.5 * j * w[j];
      next[j + 3] -= 0.5 * j * w[j];
    }
    // (1/8) \int (1 - 5 s^2) u ds
    for (int j = 0; j < n; ++j) {
      next[j + 1] += w[j] / (8.0 * (j + 1));
      next[j + 3] -= 5.0 * w[j] / (8.0 * (j + 3));
    }
    while (!next.empty() && next.back() == 0.0) next.pop_back();
    u[k + 1] = std::move(next);
  }
  return u;
}

const std::array<std::vector<double>, kDebyeOrder>& debye_u() {
  static const auto table = make_debye_u();
  return table;
}

double polyval(const std::vector<double>& c, double t) {
  double r = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * t + *it;
  return r;
}

// Uniform asymptotic (Debye) expansion, valid for large order. Returns
// ln K_nu(x).
double log_bessel_k_uniform(double nu, double x) {
  const double z = x / nu;
  const double s = std::hypot(1.0, z);
  const double t = 1.0 / s;
  const double eta = s + std::log(z / (1.0 + s));
  double sum = 0.0, sign = 1.0, nup = 1.0;
  for (const auto& uk : debye_u()) {
    sum += sign * polyval(uk, t) / nup;
    sign = -sign;
    nup *= nu;
  }
  return 0.5 * std::log(kPi / (2.0 * nu)) - nu * eta + 0.5 * std::log(t) +
         std::log(sum);
}

// ln K_nu(x) for nu < the Debye threshold: Temme/CF2 seed at the
// fractional order, then stable upward recurrence with renormalization.
double log_bessel_k_recurrence(double nu, double x) {
  const int n = static_cast<int>(nu + 0.5);
  const double mu = nu - n;
  double km, kp;     // K_{mu+i-1}, K_{mu+i}
  double lscale;     // log of the factored-out scale
  if (x <= 2.0) {
    bessel_k_temme(mu, x, km, kp);
    lscale = 0.0;
  } else {
    bessel_k_cf2(mu, x, km, kp);
    lscale = -x;
  }
  constexpr double kBig = 1e280;
  constexpr double kLogBig = 644.64911998632083364;  // log(1e280)
  for (int i = 1; i <= n - 1; ++i) {
    // advance from (K_{mu+i-1}, K_{mu+i}) to order mu+i+1
    const double knew = (2.0 * (mu + i) / x) * kp + km;
    km = kp;
    kp = knew;
    if (kp > kBig) {
      km /= kBig;
      kp /= kBig;
      lscale += kLogBig;
    }
  }
  const double k = (n == 0) ? km : kp;
  return std::log(k) + lscale;
}

}  // namespace

double ln_gamma(double x) {
  if (!std::isfinite(x) || x <= 0.0)
    domain_fail("ln_gamma requires finite x > 0, got " + std::to_string(x));
  return lgamma_shifted(std::complex<double>(x, 0.0), 12.0).real();
}

double ln_beta(double a, double b) {
  if (!std::isfinite(a) || a <= 0.0 || !std::isfinite(b) || b <= 0.0)
    domain_fail("ln_beta requires finite a, b > 0");
  return ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b);
}

SpecialValue bessel_i0(double x) {
  if (!std::isfinite(x) || x < 0.0)
    domain_fail("bessel_i0 requires finite x >= 0");
  if (x < 20.0) {
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int m = 1; m <= 200; ++m) {
      term *= q / (static_cast<double>(m) * m);
      sum += term;
      if (term < sum * std::numeric_limits<double>::epsilon()) break;
    }
    return {sum, std::log(sum)};
  }
  // Large argument: I0(x) ~ e^x / sqrt(2 pi x) * sum_k a_k / x^k.
  double term = 1.0, sum = 1.0;
  for (int k = 1; k <= 40; ++k) {
    const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
    if (next >= term) break;  // asymptotic tail started to grow
    term = next;
    sum += term;
    if (term < sum * std::numeric_limits<double>::epsilon()) break;
  }
  const double log_value = x - 0.5 * std::log(2.0 * kPi * x) + std::log(sum);
  return {std::exp(log_value), log_value};
}

SpecialValue bessel_k(double nu, double x) {
  if (!std::isfinite(x) || x <= 0.0)
    domain_fail("bessel_k requires finite x > 0");
  if (!std::isfinite(nu)) domain_fail("bessel_k requires finite nu");
  nu = std::fabs(nu);  // K_{-nu} = K_nu
  const double lk = (nu >= 120.0) ? log_bessel_k_uniform(nu, x)
                                  : log_bessel_k_recurrence(nu, x);
  return {std::exp(lk), lk};
}

double ln_abs_gamma_complex_sq(double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y))
    domain_fail("ln_abs_gamma_complex_sq requires finite arguments");
  y = std::fabs(y);  // conjugate symmetry, made exact
  if (y == 0.0) {
    if (x <= 0.0 && x == std::floor(x))
      domain_fail("ln_abs_gamma_complex_sq at a pole of Gamma");
    if (x > 0.0) return 2.0 * ln_gamma(x);
    // Negative non-integer real axis: the complex shift path crosses no
    // pole and only the real part of the branch matters for |Gamma|^2.
  }
  const std::complex<double> z(x, y);
  return 2.0 * lgamma_shifted(z, 15.0).real();
}

}  // namespace dispersia::specfun
