#include "dispersia/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

namespace dispersia::quad {
namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
constexpr int kNodes = 15;
constexpr double kX[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a, b;       // in the transformed (finite) variable
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

struct Transform {
  // x(t) and dx/dt; identity for finite intervals.
  std::function<double(double)> x;
  std::function<double(double)> dxdt;
  double t_lo, t_hi;
  // map an x-scale point into t (used by cdf_on_grid)
  std::function<double(double)> t_of_x;
};

Transform make_transform(const Interval& iv) {
  switch (iv.kind) {
    case Interval::Kind::Finite:
      return {[](double t) { return t; }, [](double) { return 1.0; }, iv.a,
              iv.b, [](double x) { return x; }};
    case Interval::Kind::SemiInfinite: {
      const double a = iv.a;
      return {[a](double t) { return a + t / (1.0 - t); },
              [](double t) { const double u = 1.0 - t; return 1.0 / (u * u); },
              0.0, 1.0,
              [a](double x) { return (x - a) / (1.0 + (x - a)); }};
    }
    case Interval::Kind::Infinite:
      return {[](double t) { return t / (1.0 - t * t); },
              [](double t) {
                const double u = 1.0 - t * t;
                return (1.0 + t * t) / (u * u);
              },
              -1.0, 1.0,
              [](double x) {
                if (x == 0.0) return 0.0;
                return (-1.0 + std::sqrt(1.0 + 4.0 * x * x)) / (2.0 * x);
              }};
  }
  throw std::logic_error("unreachable");
}

Panel evaluate_panel(const std::function<double(double)>& f,
                     const Transform& tr, double a, double b, long& evals) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fv[kNodes];
  for (int i = 0; i < 7; ++i) {
    const double t1 = c - h * kX[i];
    const double t2 = c + h * kX[i];
    fv[2 * i] = f(tr.x(t1)) * tr.dxdt(t1);
    fv[2 * i + 1] = f(tr.x(t2)) * tr.dxdt(t2);
  }
  const double tc = c;
  fv[14] = f(tr.x(tc)) * tr.dxdt(tc);
  evals += kNodes;
  for (int i = 0; i < kNodes; ++i) {
    if (!std::isfinite(fv[i])) {
      const double t = (i == 14) ? tc
                       : (i % 2 == 0 ? c - h * kX[i / 2] : c + h * kX[i / 2]);
      throw std::runtime_error(
          "quadrature: non-finite integrand sample at x = " +
          std::to_string(tr.x(t)));
    }
  }
  double kronrod = kWK[7] * fv[14];
  for (int i = 0; i < 7; ++i) kronrod += kWK[i] * (fv[2 * i] + fv[2 * i + 1]);
  double gauss = kWG[3] * fv[14];
  for (int i = 0; i < 3; ++i)
    gauss += kWG[i] * (fv[2 * (2 * i + 1)] + fv[2 * (2 * i + 1) + 1]);
  kronrod *= h;
  gauss *= h;
  return {a, b, kronrod, std::fabs(kronrod - gauss)};
}

Result integrate_transformed(const std::function<double(double)>& f,
                             const Transform& tr, double t_lo, double t_hi,
                             double abs_tol, double rel_tol, int budget) {
  long evals = 0;
  std::priority_queue<Panel> panels;
  panels.push(evaluate_panel(f, tr, t_lo, t_hi, evals));
  double total = panels.top().value;
  double total_err = panels.top().error;
  int n_panels = 1;
  while (total_err > std::max(abs_tol, rel_tol * std::fabs(total)) &&
         n_panels < budget) {
    Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = evaluate_panel(f, tr, worst.a, mid, evals);
    Panel right = evaluate_panel(f, tr, mid, worst.b, evals);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++n_panels;
  }
  Result r;
  r.value = total;
  r.error_estimate = total_err;
  r.converged = total_err <= std::max(abs_tol, rel_tol * std::fabs(total));
  r.evaluations = evals;
  return r;
}

}  // namespace

Interval Interval::finite(double a, double b) {
  if (!(std::isfinite(a) && std::isfinite(b) && a < b))
    throw std::domain_error("Interval::finite requires finite a < b");
  return {Kind::Finite, a, b};
}

Interval Interval::semi_infinite(double a) {
  if (!std::isfinite(a))
    throw std::domain_error("Interval::semi_infinite requires finite a");
  return {Kind::SemiInfinite, a, 0.0};
}

Interval Interval::infinite() { return {Kind::Infinite, 0.0, 0.0}; }

bool Interval::contains(double y) const {
  if (!std::isfinite(y)) return false;
  switch (kind) {
    case Kind::Finite: return y > a && y < b;
    case Kind::SemiInfinite: return y > a;
    case Kind::Infinite: return true;
  }
  return false;
}

double Interval::lower() const {
  return kind == Kind::Infinite ? -std::numeric_limits<double>::infinity() : a;
}

double Interval::upper() const {
  return kind == Kind::Finite ? b : std::numeric_limits<double>::infinity();
}

int panel_budget() {
  if (const char* env = std::getenv("DISPERSIA_PANEL_BUDGET")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 10000;
}

Result integrate(const std::function<double(double)>& f, const Interval& iv,
                 double abs_tol, double rel_tol) {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
    throw std::domain_error("integrate: tolerances must be positive");
  const Transform tr = make_transform(iv);
  return integrate_transformed(f, tr, tr.t_lo, tr.t_hi, abs_tol, rel_tol,
                               panel_budget());
}

std::vector<double> cdf_on_grid(const std::function<double(double)>& f,
                                const Interval& iv,
                                const std::vector<double>& grid,
                                double abs_tol, double rel_tol) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!iv.contains(grid[i]))
      throw std::domain_error("cdf_on_grid: grid point outside interval");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw std::domain_error("cdf_on_grid: grid must be strictly ascending");
  }
  const Transform tr = make_transform(iv);
  std::vector<double> out;
  out.reserve(grid.size());
  const int budget = panel_budget();
  double acc = 0.0;
  double t_prev = tr.t_lo;
  for (double g : grid) {
    const double t_g = tr.t_of_x(g);
    if (t_g > t_prev) {
      Result seg = integrate_transformed(f, tr, t_prev, t_g, abs_tol, rel_tol,
                                         budget);
      acc += seg.value;
      t_prev = t_g;
    }
    out.push_back(acc);
  }
  return out;
}

}  // namespace dispersia::quad
