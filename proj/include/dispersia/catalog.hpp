#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dispersia/deviance.hpp"

namespace dispersia {

// One named dispersion family: closed-form deviance, exact log normalizer
// ln a(y; sigma2), derivative formulas and the order/constant of its
// small-dispersion limit.
struct CatalogEntry {
  std::string name;
  quad::Interval support;
  double omega_lo, omega_hi;
  UnitDeviance deviance;
  std::function<double(double, double)> log_normalizer;  // (y, sigma2)
  std::string parameter_map;          // e.g. "sigma2 = 1/lambda"
  std::string native_name;            // "", "lambda", "n", "r"
  std::function<double(double)> variance_formula;  // V(mu0)
  std::function<double(double)> d3_formula;
  std::function<double(double)> d4_formula;
  int theorem_order = 3;              // lowest order with nonvanishing diagonal derivative
  bool proper_dm = false;
  bool exponential_dm = false;
  std::map<std::string, double> fixed_shape_params;
  // Limit constant as printed in the source table, (mu0, beta) -> value;
  // absent when no constant is printed for the family.
  std::optional<std::function<double(double, double)>> paper_constant;
  std::string constant_formula;       // human-readable theorem constant
  std::string variance_formula_text;
  double sigma2_max = 0.0;            // 0 means unrestricted
  // Defaults used by grid checks and the verification driver.
  double default_mu0 = 0.0;
  double compact_lo = 0.0, compact_hi = 0.0;
  std::vector<double> check_mu0;      // interior mu0 values for cross-checks
};

std::vector<std::string> catalog_names();

// Shape-parameterized entries (generalized_student_t: s; hyperbolic: b;
// gig_modified: a) take their shape at lookup; omitted shapes use defaults.
CatalogEntry lookup(const std::string& name,
                    const std::map<std::string, double>& shape = {});

double exact_log_pdf(const CatalogEntry& e, double y, double mu, double sigma2);

struct LimitConstant {
  int k;
  double beta;
  double dkd;     // d^k_{y..y} d(mu0; mu0)
  double value;   // exp(-beta * dkd / (2 k!))
  bool elevated;  // k raised past a vanishing derivative at this mu0
};

LimitConstant limit_constant(const CatalogEntry& e, double mu0, double beta);

struct TableComparison {
  enum class Status { Match, Discrepancy };
  Status status;
  double theorem_value;
  double paper_value;
  std::string note;
};

// Compares the theorem-derived constant against the table's printed formula
// at (mu0, beta = 1). The theorem-derived value is authoritative.
TableComparison verify_against_paper_table(const CatalogEntry& e, double mu0,
                                           double beta = 1.0);

// Exact log-density of Z = (Y - mu0)/sigma at x, Y ~ DM(mu0 + sigma*mu, sigma2).
double standardized_log_pdf(const CatalogEntry& e, double x, double mu,
                            double mu0, double sigma2);

// Entry metadata in the documented JSON shape (serialized string).
std::string describe_json(const CatalogEntry& e,
                          std::optional<double> mu0 = std::nullopt);

}  // namespace dispersia
