#pragma once

#include <functional>
#include <vector>

// Adaptive Gauss-Kronrod integration over finite, semi-infinite and doubly
// infinite intervals. Infinite endpoints are mapped to a finite parameter
// range (x = t/(1-t^2) on R, x = a + t/(1-t) on [a, inf)); the rule is open,
// so endpoints are never evaluated.

namespace dispersia::quad {

struct Interval {
  enum class Kind { Finite, SemiInfinite, Infinite };
  Kind kind;
  double a = 0.0;  // lower endpoint (Finite, SemiInfinite)
  double b = 0.0;  // upper endpoint (Finite)

  static Interval finite(double a, double b);
  static Interval semi_infinite(double a);
  static Interval infinite();

  // True when y lies in the open interior.
  bool contains(double y) const;
  double lower() const;  // -inf for Infinite
  double upper() const;  // +inf unless Finite
};

struct Result {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
  long evaluations = 0;
};

// Panel budget; DISPERSIA_PANEL_BUDGET overrides the default of 10000.
int panel_budget();

Result integrate(const std::function<double(double)>& f, const Interval& iv,
                 double abs_tol, double rel_tol);

// Cumulative integrals of f from the lower end of the interval to each grid
// point (grid strictly ascending, inside the interval).
std::vector<double> cdf_on_grid(const std::function<double(double)>& f,
                                const Interval& iv,
                                const std::vector<double>& grid,
                                double abs_tol = 1e-11,
                                double rel_tol = 1e-11);

}  // namespace dispersia::quad
