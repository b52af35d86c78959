#include "automaton.hpp"

#include <limits>

#include "zdim/generators.hpp"

namespace zdim::detail {

CodeAutomaton::CodeAutomaton(unsigned k, const std::vector<unsigned>& delta, const std::vector<std::string>& words)
    : k_(k), max_len_(static_cast<unsigned>(base_digits(std::numeric_limits<std::uint64_t>::max(), k).size())) {
  trans_.assign(2 * static_cast<std::size_t>(k_), kDead);
  for (unsigned d : delta) trans_[d] = kRoot;
  for (const auto& w : words) {
    int state = kRoot;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const auto d = static_cast<unsigned>(digit_value(w[i]));
      const std::size_t slot = static_cast<std::size_t>(state) * k_ + d;
      if (i + 1 == w.size()) {
        trans_[slot] = kRoot;
      } else {
        if (trans_[slot] == kDead || trans_[slot] == kRoot) {
          trans_[slot] = states_++;
          trans_.resize(static_cast<std::size_t>(states_) * k_, kDead);
        }
        state = trans_[slot];
      }
    }
  }

  ways_.assign(max_len_ + 1, std::vector<Count>(states_, 0));
  live_.assign(max_len_ + 1, std::vector<char>(states_, 0));
  ways_[0][kRoot] = 1;
  live_[0][kRoot] = 1;
  for (unsigned len = 1; len <= max_len_; ++len) {
    for (int s = 0; s < states_; ++s) {
      Count acc = 0;
      for (unsigned d = 0; d < k_; ++d) {
        const int t = next(s, d);
        if (t != kDead) acc += ways_[len - 1][t];
      }
      live_[len][s] = acc > 0;
      ways_[len][s] = std::move(acc);
    }
  }
}

bool CodeAutomaton::accepts(std::uint64_t n) const {
  if (n == 0) return false;
  int state = kStart;
  for (unsigned d : base_digits(n, k_)) {
    state = next(state, d);
    if (state == kDead) return false;
  }
  return state == kRoot;
}

Count CodeAutomaton::count_length(unsigned len) const {
  if (len == 0 || len > max_len_) return 0;
  return ways_[len][kStart];
}

Count CodeAutomaton::count_upto(std::uint64_t x) const {
  if (x == 0) return 0;
  const auto digits = base_digits(x, k_);
  const auto L = static_cast<unsigned>(digits.size());
  Count total = 0;
  for (unsigned len = 1; len < L; ++len) total += ways_[len][kStart];
  int state = kStart;
  for (unsigned i = 0; i < L; ++i) {
    for (unsigned d = 0; d < digits[i]; ++d) {
      const int t = next(state, d);
      if (t != kDead) total += ways_[L - 1 - i][t];
    }
    state = next(state, digits[i]);
    if (state == kDead) return total;
  }
  if (state == kRoot) total += 1;
  return total;
}

bool CodeAutomaton::dfs(unsigned pos, unsigned len, int state, std::uint64_t value, bool tight_lo, bool tight_hi,
                        const std::vector<unsigned>& lo, const std::vector<unsigned>& hi,
                        const IntegerSet::Visitor& visit) const {
  if (pos == len) return state == kRoot ? visit(value) : true;
  const unsigned first = tight_lo ? lo[pos] : 0;
  const unsigned last = tight_hi ? hi[pos] : k_ - 1;
  for (unsigned d = first; d <= last; ++d) {
    const int t = next(state, d);
    if (t == kDead || !live_[len - pos - 1][t]) continue;
    if (!dfs(pos + 1, len, t, value * k_ + d, tight_lo && d == first, tight_hi && d == last, lo, hi, visit))
      return false;
  }
  return true;
}

void CodeAutomaton::enumerate(std::uint64_t lo, std::uint64_t hi, const IntegerSet::Visitor& visit) const {
  if (lo == 0) lo = 1;
  if (lo > hi) return;
  const auto lo_digits = base_digits(lo, k_);
  const auto hi_digits = base_digits(hi, k_);
  for (auto len = static_cast<unsigned>(lo_digits.size()); len <= hi_digits.size(); ++len) {
    if (!live_[len][kStart]) continue;
    const bool tl = len == lo_digits.size();
    const bool th = len == hi_digits.size();
    if (!dfs(0, len, kStart, 0, tl, th, lo_digits, hi_digits, visit)) return;
  }
}

}  // namespace zdim::detail
