#include "zdim/count.hpp"

#include <cmath>
#include <limits>

#include <gmp.h>

#include "zdim/errors.hpp"

namespace zdim {

Count to_count(Wide value) {
  Count hi = static_cast<std::uint64_t>(value >> 64);
  Count lo = static_cast<std::uint64_t>(value);
  return (hi << 64) | lo;
}

double log2_count(const Count& c) {
  if (c <= 0) return -std::numeric_limits<double>::infinity();
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, c.backend().data());
  return std::log2(mantissa) + static_cast<double>(exponent);
}

unsigned bit_length(std::uint64_t n) noexcept {
  return n == 0 ? 0u : 64u - static_cast<unsigned>(__builtin_clzll(n));
}

std::uint64_t isqrt(std::uint64_t n) noexcept {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && (r > 0xFFFFFFFFull || r * r > n)) --r;
  while (r < 0xFFFFFFFFull && (r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t isqrt_wide(Wide n) noexcept {
  if (n <= std::numeric_limits<std::uint64_t>::max()) return isqrt(static_cast<std::uint64_t>(n));
  auto r = static_cast<Wide>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return static_cast<std::uint64_t>(r);
}

namespace {

// r^m <= n without overflow.
bool pow_at_most(std::uint64_t r, unsigned m, std::uint64_t n) {
  Wide acc = 1;
  for (unsigned i = 0; i < m; ++i) {
    acc *= r;
    if (acc > n) return false;
  }
  return true;
}

}  // namespace

std::uint64_t iroot(std::uint64_t n, unsigned m) noexcept {
  if (m <= 1 || n <= 1) return n;
  if (m == 2) return isqrt(n);
  auto r = static_cast<std::uint64_t>(std::pow(static_cast<long double>(n), 1.0L / m));
  while (r > 0 && !pow_at_most(r, m, n)) --r;
  while (pow_at_most(r + 1, m, n)) ++r;
  return r;
}

std::string to_string(const Count& c) { return c.str(); }

BudgetExceeded::BudgetExceeded(Count partial, std::uint64_t budget)
    : Error("enumeration budget of " + std::to_string(budget) + " elements exceeded (partial count " +
            partial.str() + ")"),
      partial_(std::move(partial)),
      budget_(budget) {}

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::string join_violations(const std::vector<std::string>& v) {
  std::string out = "invalid code:";
  for (const auto& s : v) out += " [" + s + "]";
  return out;
}

}  // namespace

CodeError::CodeError(std::vector<std::string> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

}  // namespace zdim
