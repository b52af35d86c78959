#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace zdim {

// Element counts. Tower-set levels reach 2^{0.7 * 65536}, so counts are
// arbitrary precision throughout.
using Count = boost::multiprecision::mpz_int;

// Unsigned 128-bit scratch type for squared norms and radicands.
using Wide = unsigned __int128;

Count to_count(Wide value);

// log2 of a count; -infinity for zero.
double log2_count(const Count& c);

// Length of the binary representation of n (0 for n == 0).
unsigned bit_length(std::uint64_t n) noexcept;

std::uint64_t isqrt(std::uint64_t n) noexcept;
std::uint64_t isqrt_wide(Wide n) noexcept;

// Largest r with r^m <= n.
std::uint64_t iroot(std::uint64_t n, unsigned m) noexcept;

std::string to_string(const Count& c);

}  // namespace zdim
