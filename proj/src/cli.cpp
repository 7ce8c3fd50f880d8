#include "dispersia/cli.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "dispersia/asymptotics.hpp"
#include "dispersia/catalog.hpp"

namespace dispersia {
namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

// Shape flags shared by the entry-taking subcommands.
struct ShapeOpts {
  double s = 2.0, b = 0.0, a = 0.5;
  bool has_s = false, has_b = false, has_a = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--s", s, "shape s (generalized_student_t)")
        ->each([this](const std::string&) { has_s = true; });
    cmd->add_option("--b", b, "shape b (hyperbolic)")
        ->each([this](const std::string&) { has_b = true; });
    cmd->add_option("--a", a, "shape a (gig_modified)")
        ->each([this](const std::string&) { has_a = true; });
  }

  std::map<std::string, double> map() const {
    std::map<std::string, double> m;
    if (has_s) m["s"] = s;
    if (has_b) m["b"] = b;
    if (has_a) m["a"] = a;
    return m;
  }
};

// --sigma2 / --lambda / --dof / --r, mutually exclusive; converted through
// the entry's parameter map.
struct DispersionOpts {
  double sigma2 = 0.0, lambda = 0.0, dof = 0.0, r = 0.0;
  CLI::Option *o_sigma2, *o_lambda, *o_dof, *o_r;

  void attach(CLI::App* cmd, bool required) {
    o_sigma2 = cmd->add_option("--sigma2", sigma2, "dispersion sigma^2");
    o_lambda = cmd->add_option("--lambda", lambda, "native precision lambda");
    o_dof = cmd->add_option("--dof", dof, "native degrees of freedom n");
    o_r = cmd->add_option("--r", r, "native shape r");
    o_sigma2->excludes(o_lambda)->excludes(o_dof)->excludes(o_r);
    o_lambda->excludes(o_dof)->excludes(o_r);
    o_dof->excludes(o_r);
    if (required) {
      // exactly one of the four
    }
  }

  double resolve(const CatalogEntry& e) const {
    const int given = (o_sigma2->count() > 0) + (o_lambda->count() > 0) +
                      (o_dof->count() > 0) + (o_r->count() > 0);
    if (given == 0)
      throw std::domain_error(
          "one of --sigma2/--lambda/--dof/--r is required");
    if (o_sigma2->count()) return sigma2;
    if (o_lambda->count()) {
      if (e.native_name != "lambda")
        throw std::domain_error(e.name + ": native parameter is not lambda (" +
                                e.parameter_map + ")");
      if (!(lambda > 0.0)) throw std::domain_error("lambda must be positive");
      return 1.0 / lambda;
    }
    if (o_dof->count()) {
      if (e.native_name != "n")
        throw std::domain_error(e.name + ": native parameter is not n (" +
                                e.parameter_map + ")");
      if (!(dof > 0.0)) throw std::domain_error("dof must be positive");
      return 1.0 / (dof + 1.0);
    }
    if (e.native_name != "r")
      throw std::domain_error(e.name + ": native parameter is not r (" +
                              e.parameter_map + ")");
    if (!(r > 0.0)) throw std::domain_error("r must be positive");
    return 1.0 / (r + 1.0);
  }
};

void emit_limit_report(const LimitReport& rep, const std::string& format,
                       std::ostream& out) {
  if (format == "json") {
    nlohmann::json j;
    j["entry"] = rep.entry;
    j["k"] = rep.k;
    j["beta"] = rep.beta;
    j["mu0"] = rep.mu0;
    j["predicted"] = rep.predicted;
    j["elevated"] = rep.elevated;
    j["final_rel_err"] = rep.final_rel_err;
    j["tail_monotone"] = rep.tail_monotone;
    j["converged"] = rep.converged;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rep.rows)
      j["rows"].push_back({{"sigma2", r.sigma2},
                           {"x_sigma", r.x},
                           {"ratio", r.ratio},
                           {"predicted", r.predicted},
                           {"abs_log_gap", r.abs_log_gap}});
    out << j.dump(2) << "\n";
    return;
  }
  out << "sigma2,x_sigma,ratio,predicted,abs_log_gap\n";
  for (const auto& r : rep.rows)
    out << fmt(r.sigma2) << "," << fmt(r.x) << "," << fmt(r.ratio) << ","
        << fmt(r.predicted) << "," << fmt(r.abs_log_gap) << "\n";
}

std::vector<double> parse_schedule(const std::string& spec) {
  std::vector<double> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size() || !(v > 0.0))
      throw std::domain_error("bad schedule element '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::domain_error("empty schedule");
  return out;
}

VerifyRow check_deviance(const CatalogEntry& e) {
  const auto grid = deviance_check_grid(e.compact_lo, e.compact_hi,
                                        e.compact_lo, e.compact_hi, 50);
  const auto bad = check_unit_deviance(e.deviance, grid);
  if (!bad.empty())
    return {e.name, "deviance", "FAIL",
            bad.front().what + " at y=" + fmt(bad.front().y) +
                " mu=" + fmt(bad.front().mu)};
  for (double m : e.check_mu0) {
    const RegularityReport rr = check_regularity(e.deviance, m);
    if (!rr.pass)
      return {e.name, "deviance", "FAIL",
              rr.failures.front() + " at mu0=" + fmt(m)};
  }
  return {e.name, "deviance", "PASS",
          "axioms + regularity at " + std::to_string(e.check_mu0.size()) +
              " mu0 values"};
}

VerifyRow check_derivatives(const CatalogEntry& e) {
  for (double m : e.check_mu0) {
    for (int order = 2; order <= 4; ++order) {
      const double cf = e.deviance.closed_form_diagonal.at(order)(m);
      const double fd = diagonal_derivative_fd(e.deviance, m, order);
      if (!(std::fabs(fd - cf) <= 1e-5 * std::max(1.0, std::fabs(cf))))
        return {e.name, "derivatives", "FAIL",
                "order " + std::to_string(order) + " at mu0=" + fmt(m) +
                    ": closed " + fmt(cf) + " vs fd " + fmt(fd)};
    }
  }
  return {e.name, "derivatives", "PASS", "orders 2-4 at 5 mu0 values"};
}

VerifyRow check_normalization(const CatalogEntry& e) {
  const double v = normalization_integral(e, e.default_mu0, 0.1);
  if (std::fabs(v - 1.0) <= 1e-6)
    return {e.name, "normalization", "PASS", "integral " + fmt(v)};
  return {e.name, "normalization", "FAIL", "integral " + fmt(v)};
}

VerifyRow check_paper_table(const CatalogEntry& e) {
  const TableComparison tc = verify_against_paper_table(e, e.default_mu0);
  if (tc.status == TableComparison::Status::Match)
    return {e.name, "paper_table", "PASS",
            tc.note.empty() ? "constant " + fmt(tc.theorem_value) : tc.note};
  return {e.name, "paper_table", "DISCREPANCY",
          "theorem " + fmt(tc.theorem_value) + " vs printed " +
              fmt(tc.paper_value) + "; " + tc.note};
}

VerifyRow check_limit(const CatalogEntry& e) {
  // Entries whose limit constant degenerates at beta > 0 (the normal) are
  // checked at beta = 0, where the ratio must converge to 1.
  double beta = 1.0;
  try {
    limit_constant(e, e.default_mu0, beta);
  } catch (const std::domain_error&) {
    beta = 0.0;
  }
  const LimitReport rep =
      verify_limit(e, e.default_mu0, beta, default_schedule());
  if (rep.final_rel_err <= 0.02)
    return {e.name, "limit", "PASS",
            "k=" + std::to_string(rep.k) + " beta=" + fmt(beta) +
                " final rel err " + fmt(rep.final_rel_err)};
  return {e.name, "limit", "FAIL",
          "final ratio " + fmt(rep.rows.back().ratio) + " vs predicted " +
              fmt(rep.predicted)};
}

}  // namespace

std::vector<VerifyRow> run_verify_all(const std::string& only) {
  std::vector<VerifyRow> rows;
  bool seen = only.empty();
  for (const auto& name : catalog_names()) {
    if (!only.empty() && name != only) continue;
    seen = true;
    const CatalogEntry e = lookup(name);
    rows.push_back(check_deviance(e));
    rows.push_back(check_derivatives(e));
    rows.push_back(check_normalization(e));
    rows.push_back(check_paper_table(e));
    rows.push_back(check_limit(e));
  }
  if (!seen) throw std::domain_error("unknown catalog entry '" + only + "'");
  return rows;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"dispersion-model catalog, densities and limit verification"};
  app.require_subcommand(1);
  std::string format = "csv";
  app.add_option("--format", format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* c_list = app.add_subcommand("catalog-list", "list catalog entries");

  std::string name;
  ShapeOpts shp_desc;
  double mu0 = std::numeric_limits<double>::quiet_NaN();
  auto* c_desc =
      app.add_subcommand("catalog-describe", "entry metadata as JSON");
  c_desc->add_option("entry", name)->required();
  c_desc->add_option("--mu0", mu0, "evaluate derivative values at mu0");
  shp_desc.attach(c_desc);

  ShapeOpts shp_pdf;
  DispersionOpts disp_pdf;
  double y = 0.0, mu = 0.0;
  bool saddlepoint = false;
  auto* c_pdf = app.add_subcommand("pdf", "evaluate the density at a point");
  c_pdf->add_option("entry", name)->required();
  c_pdf->add_option("--y", y)->required();
  c_pdf->add_option("--mu", mu)->required();
  c_pdf->add_flag("--saddlepoint", saddlepoint,
                  "use the saddlepoint approximation");
  disp_pdf.attach(c_pdf, true);
  shp_pdf.attach(c_pdf);

  ShapeOpts shp_norm;
  DispersionOpts disp_norm;
  double norm_mu0 = std::numeric_limits<double>::quiet_NaN();
  auto* c_norm =
      app.add_subcommand("normalize", "integrate the exact density");
  c_norm->add_option("entry", name)->required();
  c_norm->add_option("--mu0", norm_mu0, "mean (default: entry default)");
  disp_norm.attach(c_norm, true);
  shp_norm.attach(c_norm);

  ShapeOpts shp_lim;
  double lim_mu0 = std::numeric_limits<double>::quiet_NaN();
  double beta = 1.0;
  int k_flag = 0;
  std::string schedule_spec;
  bool negative_branch = false;
  auto* c_lim =
      app.add_subcommand("limit", "drifting-sequence convergence table");
  c_lim->add_option("entry", name)->required();
  c_lim->add_option("--mu0", lim_mu0, "expansion point (default: entry default)");
  c_lim->add_option("--beta", beta, "drift parameter beta >= 0");
  c_lim->add_option("--k", k_flag, "expected theorem order (3 or 4)");
  c_lim->add_option("--schedule", schedule_spec,
                    "comma-separated sigma2 values (default 1e-1..1e-8)");
  c_lim->add_flag("--negative-branch", negative_branch,
                  "approach from below (unverified extension)");
  shp_lim.attach(c_lim);

  std::string only;
  auto* c_ver = app.add_subcommand("verify-all", "run the verification suite");
  c_ver->add_option("--only", only, "restrict to one entry");

  std::vector<const char*> argv;
  argv.push_back("dispersia");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (c_list->parsed()) {
      if (format == "json") {
        out << nlohmann::json(catalog_names()).dump(2) << "\n";
      } else {
        out << "entry\n";
        for (const auto& n : catalog_names()) out << n << "\n";
      }
      return 0;
    }
    if (c_desc->parsed()) {
      const CatalogEntry e = lookup(name, shp_desc.map());
      std::optional<double> m;
      if (!std::isnan(mu0)) m = mu0;
      out << describe_json(e, m) << "\n";
      return 0;
    }
    if (c_pdf->parsed()) {
      const CatalogEntry e = lookup(name, shp_pdf.map());
      const double s2 = disp_pdf.resolve(e);
      const double lp = saddlepoint
                            ? saddlepoint_log_pdf(e.deviance, y, mu, s2)
                            : exact_log_pdf(e, y, mu, s2);
      if (format == "json") {
        nlohmann::json j{{"entry", e.name}, {"y", y},       {"mu", mu},
                         {"sigma2", s2},    {"log_pdf", lp}, {"pdf", std::exp(lp)}};
        out << j.dump(2) << "\n";
      } else {
        out << "y,mu,sigma2,log_pdf,pdf\n"
            << fmt(y) << "," << fmt(mu) << "," << fmt(s2) << "," << fmt(lp)
            << "," << fmt(std::exp(lp)) << "\n";
      }
      return 0;
    }
    if (c_norm->parsed()) {
      const CatalogEntry e = lookup(name, shp_norm.map());
      const double s2 = disp_norm.resolve(e);
      const double m = std::isnan(norm_mu0) ? e.default_mu0 : norm_mu0;
      const double v = normalization_integral(e, m, s2);
      if (format == "json") {
        nlohmann::json j{
            {"entry", e.name}, {"mu0", m}, {"sigma2", s2}, {"integral", v}};
        out << j.dump(2) << "\n";
      } else {
        out << "entry,mu0,sigma2,integral\n"
            << e.name << "," << fmt(m) << "," << fmt(s2) << "," << fmt(v)
            << "\n";
      }
      return 0;
    }
    if (c_lim->parsed()) {
      const CatalogEntry e = lookup(name, shp_lim.map());
      const double m = std::isnan(lim_mu0) ? e.default_mu0 : lim_mu0;
      const std::vector<double> sched = schedule_spec.empty()
                                            ? default_schedule()
                                            : parse_schedule(schedule_spec);
      const LimitReport rep =
          verify_limit(e, m, beta, sched, 0.02, negative_branch);
      if (k_flag != 0 && k_flag != rep.k)
        throw std::domain_error(e.name + ": requested k=" +
                                std::to_string(k_flag) +
                                " but the entry's order at mu0=" + fmt(m) +
                                " is k=" + std::to_string(rep.k));
      emit_limit_report(rep, format, out);
      if (!rep.converged) {
        err << "limit: not converged (final rel err " +
                   fmt(rep.final_rel_err) + ")\n";
        return 1;
      }
      return 0;
    }
    // verify-all
    const std::vector<VerifyRow> rows = run_verify_all(only);
    bool any_fail = false;
    if (format == "json") {
      nlohmann::json j = nlohmann::json::array();
      for (const auto& r : rows) {
        j.push_back({{"entry", r.entry},
                     {"check", r.check},
                     {"status", r.status},
                     {"detail", r.detail}});
        any_fail |= r.status == "FAIL";
      }
      out << j.dump(2) << "\n";
    } else {
      out << "entry,check,status,detail\n";
      for (const auto& r : rows) {
        out << r.entry << "," << r.check << "," << r.status << ",\""
            << r.detail << "\"\n";
        any_fail |= r.status == "FAIL";
      }
    }
    return any_fail ? 1 : 0;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace dispersia
