#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

#include "zdim/count.hpp"
#include "zdim/set_core.hpp"

namespace zdim {

// An s-parameterized betting function on binary strings of length <= depth,
// stored as log2 values; -infinity stands for the value 0. A string w is a
// pair (length, bits) with the first character as the high bit.
class Gale {
 public:
  static constexpr unsigned kMaxDepth = 22;

  Gale(double s, unsigned depth, std::vector<double> log2_values);
  static Gale constant(double s, unsigned depth, double value);

  double s() const noexcept { return s_; }
  unsigned depth() const noexcept { return depth_; }

  static std::size_t index(unsigned len, std::uint64_t bits) { return (std::size_t{1} << len) - 1 + bits; }
  double log2_value(unsigned len, std::uint64_t bits) const;
  double value(unsigned len, std::uint64_t bits) const;

 private:
  double s_;
  unsigned depth_;
  std::vector<double> log2_;
};

enum class GaleMode { gale, supergale };

// Largest violation over internal nodes of length < min(depth, max_len),
// measured relative to max(1, d(w)).
double gale_deficiency(const Gale& g, GaleMode mode, unsigned max_len = Gale::kMaxDepth);

struct SupergaleConstruction {
  Gale gale = Gale::constant(0, 0, 0.0);
  double s = 0;
  double upper_estimate = 0;  // binary-length estimate the construction was sized for
  double epsilon = 0;
  unsigned n0 = 0;
  double c0 = 1;
  double c1 = 1;
  std::vector<Count> level_counts;  // |A_=k|, k = 0..depth

  // d_k(w) of the level-k martingale, evaluated directly from the member list.
  double level_value(unsigned k, unsigned len, std::uint64_t bits) const;

  std::shared_ptr<const std::vector<char>> members;  // members[v] for v < 2^depth
};

SupergaleConstruction build_supergale(const IntegerSet& set, double s, unsigned depth, unsigned window = 8);

bool succeeds(const Gale& g, std::uint64_t n);

struct KraftResult {
  std::uint64_t count = 0;
  double bound = 0;
  bool ok = false;
};

KraftResult kraft_check(const Gale& g, unsigned k);

// log2 of the least initial capital d(lambda) an s-supergale needs to succeed
// on every one of `level_count` strings of length k.
double kraft_required_log2_capital(const Count& level_count, double s, unsigned k);

void write_gale_csv(std::ostream& out, const Gale& g, unsigned dump_depth);

}  // namespace zdim
