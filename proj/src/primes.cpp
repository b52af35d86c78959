#include <algorithm>
#include <mutex>
#include <memory>
#include <vector>

#include "zdim/errors.hpp"
#include "zdim/generators.hpp"

namespace zdim {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Base primes up to some limit, grown on demand and shared between copies
// of the prime set.
class BasePrimes {
 public:
  std::vector<std::uint32_t> upto(std::uint64_t limit) {
    std::lock_guard<std::mutex> lock(mu_);
    if (limit > limit_) grow(std::max<std::uint64_t>(limit, 2 * limit_));
    auto end = std::upper_bound(primes_.begin(), primes_.end(), limit);
    return {primes_.begin(), end};
  }

 private:
  void grow(std::uint64_t limit) {
    std::vector<char> comp(limit + 1, 0);
    primes_.clear();
    for (std::uint64_t i = 2; i <= limit; ++i) {
      if (comp[i]) continue;
      primes_.push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = i * i; j <= limit; j += i) comp[j] = 1;
    }
    limit_ = limit;
  }

  std::mutex mu_;
  std::uint64_t limit_ = 0;
  std::vector<std::uint32_t> primes_;
};

constexpr std::uint64_t kSieveRootLimit = std::uint64_t{1} << 27;
constexpr std::uint64_t kSegment = std::uint64_t{1} << 18;

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

IntegerSet gen_primes() {
  auto base = std::make_shared<BasePrimes>();
  IntegerSet set("primes", [base](std::uint64_t lo, std::uint64_t hi, const IntegerSet::Visitor& visit) {
    lo = std::max<std::uint64_t>(lo, 2);
    if (lo > hi) return;
    const std::uint64_t root = isqrt(hi);
    if (root > kSieveRootLimit) {
      // far out: test candidates one at a time
      for (std::uint64_t x = lo;; ++x) {
        if (is_prime(x) && !visit(x)) return;
        if (x == hi) return;
      }
    }
    const auto primes = base->upto(root);
    std::vector<char> comp;
    for (std::uint64_t start = lo;;) {
      const std::uint64_t end = (hi - start < kSegment) ? hi : start + kSegment - 1;
      comp.assign(end - start + 1, 0);
      for (std::uint32_t p : primes) {
        const std::uint64_t pp = static_cast<std::uint64_t>(p) * p;
        if (pp > end) break;
        std::uint64_t m = std::max(pp, (start + p - 1) / p * p);
        for (; m <= end; m += p) comp[m - start] = 1;
      }
      for (std::uint64_t x = start; x <= end; ++x)
        if (!comp[x - start] && !visit(x)) return;
      if (end == hi) return;
      start = end + 1;
    }
  });
  set.with_membership(is_prime);
  return set;
}

}  // namespace zdim
