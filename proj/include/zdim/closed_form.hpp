#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zdim/generators.hpp"

namespace zdim {

// Empty result means the spec is a valid instantaneous code.
std::vector<std::string> validate_code(const InstantaneousCodeSpec& spec);

// sum over w in B of k^{-s|w|}
double code_beta(const InstantaneousCodeSpec& spec, double s);

struct CodeDimensionResult {
  double s_star = 0;
  double beta_at_s_star = 1;
  int iterations = 0;
  double lo = 0, hi = 0;
};

CodeDimensionResult code_dimension(const InstantaneousCodeSpec& spec);

double digit_dimension(unsigned k, const std::vector<unsigned>& allowed);

// The instantaneous code behind a digit set: B = allowed digits, Delta = allowed minus 0.
InstantaneousCodeSpec digit_code(unsigned k, const std::vector<unsigned>& allowed);

double substitution_dimension(const SubstitutionRule& rule);

// Rank over Q of the integer vectors (flattened, each of length d).
unsigned lattice_subspace_dimension(unsigned d, const std::vector<std::int64_t>& vectors);

struct ClosedFormRow {
  std::string family;
  std::string params;
  double closed_form = 0;
  double estimated = 0;
};

void write_closed_form_csv(std::ostream& out, const std::vector<ClosedFormRow>& rows);

}  // namespace zdim
