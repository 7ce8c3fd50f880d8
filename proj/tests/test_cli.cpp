#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dispersia/cli.hpp"

using dispersia::run_cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream ss(s);
  std::string line;
  while (std::getline(ss, line)) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) out.push_back(f);
  return out;
}

}  // namespace

TEST_CASE("catalog-list") {
  const Run r = cli({"catalog-list"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 17);
  CHECK(ls[0] == "entry");
  CHECK(ls[1] == "normal");
  CHECK(ls[16] == "gig_modified");

  const Run j = cli({"--format", "json", "catalog-list"});
  CHECK(j.code == 0);
  CHECK(nlohmann::json::parse(j.out).size() == 16);
}

TEST_CASE("catalog-describe emits the documented JSON") {
  const Run r = cli({"catalog-describe", "student_t", "--mu0", "0"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["V"] == 1.0);
  CHECK(j["k"] == 4);
  CHECK(j["d4"] == -12.0);
  CHECK(j["constant_formula"] == "exp(beta/4)");
}

TEST_CASE("pdf evaluation with native and sigma2 parameters") {
  const Run a = cli({"pdf", "gamma", "--y", "1.3", "--mu", "1.0", "--sigma2",
                     "0.1"});
  REQUIRE(a.code == 0);
  const Run b =
      cli({"pdf", "gamma", "--y", "1.3", "--mu", "1.0", "--lambda", "10"});
  REQUIRE(b.code == 0);
  CHECK(a.out == b.out);
  const auto ls = lines(a.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == "y,mu,sigma2,log_pdf,pdf");

  // --sigma2 and --lambda are mutually exclusive
  CHECK(cli({"pdf", "gamma", "--y", "1", "--mu", "1", "--sigma2", "0.1",
             "--lambda", "10"})
            .code == 2);
  // the native flag must match the entry's parameter map
  CHECK(cli({"pdf", "gamma", "--y", "1", "--mu", "1", "--dof", "5"}).code == 2);
  // saddlepoint equals exact for the normal entry
  const Run exact =
      cli({"pdf", "normal", "--y", "0.5", "--mu", "0", "--sigma2", "1"});
  const Run sp = cli({"pdf", "normal", "--y", "0.5", "--mu", "0", "--sigma2",
                      "1", "--saddlepoint"});
  CHECK(exact.out == sp.out);
}

TEST_CASE("normalize") {
  const Run r = cli({"normalize", "simplex", "--mu0", "0.3", "--sigma2", "0.1"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] == "entry,mu0,sigma2,integral");
  const double v = std::stod(fields(ls[1])[3]);
  CHECK(std::fabs(v - 1.0) < 1e-6);
}

TEST_CASE("limit emits the documented CSV and converges") {
  const Run r = cli({"limit", "gamma", "--mu0", "1", "--beta", "1", "--k", "3"});
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 9);
  CHECK(ls[0] == "sigma2,x_sigma,ratio,predicted,abs_log_gap");
  const auto last = fields(ls[8]);
  const double ratio = std::stod(last[2]);
  CHECK(std::fabs(ratio / std::exp(1.0 / 3.0) - 1.0) < 0.02);

  // requesting the wrong order is a configuration error
  CHECK(cli({"limit", "gamma", "--mu0", "1", "--beta", "1", "--k", "4"}).code ==
        2);
  // custom schedule honored
  const Run s = cli({"limit", "student_t", "--beta", "1", "--schedule",
                     "1e-2,1e-4,1e-6,1e-8"});
  CHECK(s.code == 0);
  CHECK(lines(s.out).size() == 5);
  // json mirror carries the same fields
  const Run j = cli({"--format", "json", "limit", "von_mises", "--beta", "1"});
  CHECK(j.code == 0);
  const auto parsed = nlohmann::json::parse(j.out);
  CHECK(parsed["rows"].size() == 8);
  CHECK(parsed["converged"] == true);
}

TEST_CASE("verify-all filtered runs") {
  const Run vm = cli({"verify-all", "--only", "von_mises"});
  CHECK(vm.code == 0);
  const auto ls = lines(vm.out);
  REQUIRE(ls.size() == 6);
  CHECK(ls[0] == "entry,check,status,detail");
  for (std::size_t i = 1; i < ls.size(); ++i)
    CHECK(fields(ls[i])[2] == "PASS");

  const Run n = cli({"verify-all", "--only", "normal"});
  CHECK(n.code == 0);
  for (std::size_t i = 1; i < lines(n.out).size(); ++i)
    CHECK(fields(lines(n.out)[i])[2] == "PASS");

  CHECK(cli({"verify-all", "--only", "weibull"}).code == 2);
}

TEST_CASE("usage errors and determinism") {
  CHECK(cli({"pdf", "weibull", "--y", "1", "--mu", "1", "--sigma2", "0.1"})
            .code == 2);
  CHECK(cli({"no-such-command"}).code == 2);
  CHECK(cli({"pdf", "gamma", "--y", "1", "--mu", "1"}).code == 2);

  const Run a = cli({"limit", "leipnik", "--beta", "1"});
  const Run b = cli({"limit", "leipnik", "--beta", "1"});
  CHECK(a.out == b.out);
  CHECK(a.code == b.code);
}
