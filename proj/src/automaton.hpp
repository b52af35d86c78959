#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zdim/count.hpp"
#include "zdim/set_core.hpp"

namespace zdim::detail {

// DFA for the base-k language  Delta B*  over a prefix code B. State 0 is the
// start (no digit read yet), state 1 the trie root (between code words), and
// the rest are interior trie nodes. Accepting state: the root.
class CodeAutomaton {
 public:
  CodeAutomaton(unsigned k, const std::vector<unsigned>& delta, const std::vector<std::string>& words);

  unsigned base() const noexcept { return k_; }
  bool accepts(std::uint64_t n) const;
  // accepted n in [1, x]
  Count count_upto(std::uint64_t x) const;
  // accepted n with exactly `len` base-k digits
  Count count_length(unsigned len) const;
  void enumerate(std::uint64_t lo, std::uint64_t hi, const IntegerSet::Visitor& visit) const;

 private:
  static constexpr int kDead = -1;
  static constexpr int kStart = 0;
  static constexpr int kRoot = 1;

  int next(int state, unsigned digit) const { return trans_[static_cast<std::size_t>(state) * k_ + digit]; }
  bool dfs(unsigned pos, unsigned len, int state, std::uint64_t value, bool tight_lo, bool tight_hi,
           const std::vector<unsigned>& lo, const std::vector<unsigned>& hi,
           const IntegerSet::Visitor& visit) const;

  unsigned k_;
  unsigned max_len_;
  int states_ = 2;
  std::vector<int> trans_;
  std::vector<std::vector<Count>> ways_;  // ways_[len][state]
  std::vector<std::vector<char>> live_;
};

}  // namespace zdim::detail
