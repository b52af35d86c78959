#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "zdim/estimators.hpp"
#include "zdim/generators.hpp"

namespace zdim {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  TowerPairSpec tower;  // thm5.6 parameters
};

// Suite ids: thm2.1 thm3.5 thm3.6 thm3.w thm4.1 thm5.1 thm5.5 thm5.6
const std::vector<std::string>& verify_suite_ids();
std::string verify_suite_summary();
std::vector<CheckResult> run_verify_suite(const std::string& id, const VerifyOptions& options = {});

// "PASS name: detail" per line; returns true when every check passed.
bool print_checks(std::ostream& out, const std::vector<CheckResult>& checks);

// Largest n with 2^n inside the generated cube of a depth-`depth` substitution set.
unsigned substitution_nmax(const SubstitutionRule& rule, unsigned depth);
DimensionEstimate substitution_estimate(const SubstitutionRule& rule, unsigned depth, unsigned window);

}  // namespace zdim
