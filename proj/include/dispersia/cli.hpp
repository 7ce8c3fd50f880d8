#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dispersia {

// Full command-line front end; args excludes the program name. Returns the
// process exit status: 0 success, 1 verification failure, 2 usage/domain
// error. Data rows go to out, diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

struct VerifyRow {
  std::string entry;
  std::string check;   // deviance, derivatives, normalization, paper_table, limit
  std::string status;  // PASS, FAIL, DISCREPANCY
  std::string detail;
};

// The verification driver behind `verify-all`; empty `only` runs the whole
// catalog in order.
std::vector<VerifyRow> run_verify_all(const std::string& only = "");

}  // namespace dispersia
