#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zdim/count.hpp"
#include "zdim/set_core.hpp"

namespace zdim {

// ---- basic families ----

IntegerSet gen_powers(std::uint64_t base);          // {1, b, b^2, ...}
IntegerSet gen_perfect_powers(unsigned exponent);  // {1, 2^m, 3^m, ...}
IntegerSet gen_primes();
IntegerSet gen_finite(std::vector<std::uint64_t> elements);  // any order, duplicates dropped
IntegerSet gen_all();

struct BasicSpec {
  enum class Kind { powers, perfect_powers, primes, finite, all };
  Kind kind = Kind::all;
  std::uint64_t param = 2;
  std::vector<std::uint64_t> elements;
};

IntegerSet gen_basic(const BasicSpec& spec);

bool is_prime(std::uint64_t n);

// ---- digit patterns ----

// Words over {0..k-1}, one character per digit: '0'-'9' then 'a'-'z'.
struct InstantaneousCodeSpec {
  unsigned k = 2;
  std::vector<unsigned> delta;
  std::vector<std::string> words;
};

char digit_char(unsigned d);
int digit_value(char c);  // -1 if not a digit symbol

IntegerSet gen_digit_set(unsigned k, const std::vector<unsigned>& allowed);
IntegerSet gen_code_set(const InstantaneousCodeSpec& spec);

// Base-k digits of n, most significant first.
std::vector<unsigned> base_digits(std::uint64_t n, unsigned k);

// ---- lattice families ----

LatticePointSet gen_pascal_mod2(unsigned depth);

struct SubstitutionRule {
  static constexpr int kNo = -1;
  unsigned c = 2;
  unsigned d = 2;
  std::vector<int> cells;  // c^d entries, row-major with i1 slowest; -1 or rotation 0..3

  unsigned survivors() const;  // Y
  std::string rule_string() const;
};

// Rule string: one character per cell, '0'..'3' for R0..R3 and '-' for no.
SubstitutionRule parse_substitution_rule(unsigned c, unsigned d, const std::string& rule);
void validate_rule(const SubstitutionRule& rule);
SubstitutionRule sierpinski_rule();

LatticePointSet gen_substitution(const SubstitutionRule& rule, unsigned depth,
                                 std::uint64_t budget = default_budget());

// Planar quarter-turn on an L x L grid of 0-based coordinates, applied j times.
void rotate_quarter(std::int64_t& x, std::int64_t& y, std::int64_t L, int j);

// Points of the lattice spanned by `vectors` (flattened, dimension d) with
// Euclidean norm at most `radius`.
LatticePointSet gen_sublattice(unsigned d, const std::vector<std::int64_t>& vectors, std::uint64_t radius);

// ---- tower construction ----

struct TowerPairSpec {
  double alpha = 0.3;
  double beta = 0.5;
  double gamma = 0.7;
};

struct TowerCounts {
  std::uint64_t t = 0;
  Count a;       // |A_=t|
  Count b;       // |B_=t|
  Count c_next;  // |(A_=t + B_=t)|, all of bit-length t+1
  double log2_lower = 0;  // log2(2^{gamma t} - 2^{(gamma - alpha) t})
  double log2_upper = 0;  // log2(2 * 2^{gamma t})
  bool within_bounds = false;
  double entropy_ratio = 0;  // log2 |c_next| / (t + 1)
};

// T(1) = 1, T(n+1) = 2^T(n); defined for 1 <= n <= 5.
std::uint64_t tower(unsigned n);
bool is_tower_value(std::uint64_t t);

class TowerPair {
 public:
  TowerPair(TowerPairSpec spec);

  const TowerPairSpec& spec() const noexcept { return spec_; }
  bool swapped() const noexcept { return swapped_; }
  const IntegerSet& a() const noexcept { return a_; }
  const IntegerSet& b() const noexcept { return b_; }

  // Exact level counts at bit-length t (zero when t is not a tower value).
  Count a_level(std::uint64_t t) const;
  Count b_level(std::uint64_t t) const;
  TowerCounts analytic_counts(std::uint64_t t) const;

 private:
  TowerPairSpec spec_;
  double lo_ = 0, hi_ = 0;  // construction exponents, lo_ < hi_
  bool swapped_ = false;
  IntegerSet a_, b_;
};

TowerPair gen_tower_pair(const TowerPairSpec& spec);

}  // namespace zdim
