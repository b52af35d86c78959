#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "oracles.hpp"
#include "zdim/estimators.hpp"
#include "zdim/generators.hpp"
#include "zdim/set_algebra.hpp"

using namespace zdim;

namespace {

constexpr int kCases = 1000;
constexpr unsigned kN = 14;

std::vector<std::uint64_t> random_subset(std::mt19937_64& rng, std::uint64_t hi) {
  // density falls off like x^{-t} so the sets have varied exponents
  std::uniform_real_distribution<double> u(0, 1);
  const double t = u(rng);
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 1; x <= hi; ++x)
    if (u(rng) < std::pow(static_cast<double>(x), -t)) out.push_back(x);
  return out;
}

double upper(const IntegerSet& s) { return upper_dim_estimate(block_profile(s, NormKind::value, kN), 4).upper; }

}  // namespace

TEST_CASE("subset monotonicity of profiles and estimates") {
  std::mt19937_64 rng(101);
  for (int i = 0; i < kCases; ++i) {
    const auto a = random_subset(rng, 1u << kN);
    std::vector<std::uint64_t> b;
    for (auto x : a)
      if (rng() % 3) b.push_back(x);
    const auto A = IntegerSet::from_sorted("A", a), B = IntegerSet::from_sorted("B", b);
    const auto pa = block_profile(A, NormKind::value, kN), pb = block_profile(B, NormKind::value, kN);
    for (unsigned n = 0; n <= kN; ++n) {
      REQUIRE(pb.blocks[n] <= pa.blocks[n]);
      REQUIRE(pb.cumulative[n] <= pa.cumulative[n]);
    }
    const auto ea = upper_dim_estimate(pa, 4), eb = upper_dim_estimate(pb, 4);
    REQUIRE(eb.upper <= ea.upper);
    REQUIRE(eb.lower <= ea.lower);
    REQUIRE(ea.lower <= ea.upper);
    REQUIRE(ea.upper <= 1.0);
    REQUIRE(ea.lower >= 0.0);
  }
}

TEST_CASE("union stability") {
  std::mt19937_64 rng(102);
  for (int i = 0; i < kCases; ++i) {
    const auto a = random_subset(rng, 1u << kN), b = random_subset(rng, 1u << kN);
    const auto A = IntegerSet::from_sorted("A", a), B = IntegerSet::from_sorted("B", b);
    const double ua = upper(A), ub = upper(B), uu = upper(unite(A, B));
    // cum(A u B) <= 2 max(cum A, cum B): at most one bit over the tail
    REQUIRE(uu >= std::max(ua, ub));
    REQUIRE(uu <= std::max(ua, ub) + 1.0 / (kN - 3) + 1e-12);
  }
}

TEST_CASE("translation and dilation preserve counts exactly") {
  std::mt19937_64 rng(103);
  const std::vector<IntegerSet> bases{gen_perfect_powers(2), gen_primes(), gen_digit_set(3, {0, 2}),
                                      gen_powers(3)};
  for (int i = 0; i < kCases; ++i) {
    const auto& s = bases[i % bases.size()];
    const std::uint64_t k = 1 + rng() % 5000, N = 1 + rng() % 200000;
    const Count base = count_range(s, 1, N);
    REQUIRE(count_range(affine(s, k, AffineMode::translate), 1 + k, N + k) == base);
    REQUIRE(count_range(affine(s, k, AffineMode::dilate), 1, k * N) == base);
    const std::uint64_t probe = 1 + rng() % N;
    REQUIRE(affine(s, k, AffineMode::translate).contains(probe + k) == s.contains(probe));
    REQUIRE(affine(s, k, AffineMode::dilate).contains(probe * k) == s.contains(probe));
  }
}

TEST_CASE("zeta partial sums are monotone in s and N") {
  std::mt19937_64 rng(104);
  std::uniform_real_distribution<double> u(0, 2);
  const std::vector<IntegerSet> bases{gen_perfect_powers(2), gen_primes(), gen_all(), gen_digit_set(5, {1, 3})};
  for (int i = 0; i < kCases; ++i) {
    const auto& s = bases[i % bases.size()];
    double s1 = u(rng), s2 = u(rng);
    if (s1 > s2) std::swap(s1, s2);
    std::uint64_t n1 = 1 + rng() % 5000, n2 = 1 + rng() % 5000;
    if (n1 > n2) std::swap(n1, n2);
    REQUIRE(zeta_partial(s, s1, n1).value >= zeta_partial(s, s2, n1).value);
    REQUIRE(zeta_partial(s, s1, n1).value <= zeta_partial(s, s1, n2).value);
  }
}

TEST_CASE("L1 and Euclidean counts sandwich each other") {
  std::mt19937_64 rng(105);
  for (int i = 0; i < kCases; ++i) {
    const unsigned d = 2 + static_cast<unsigned>(rng() % 2);
    std::set<std::vector<std::int64_t>> pts;
    const int n = 1 + static_cast<int>(rng() % 200);
    for (int j = 0; j < n; ++j) {
      std::vector<std::int64_t> p(d);
      for (auto& x : p) x = static_cast<std::int64_t>(rng() % 129) - 64;
      pts.insert(p);
    }
    std::vector<std::int64_t> flat;
    for (const auto& p : pts) flat.insert(flat.end(), p.begin(), p.end());
    const auto set = LatticePointSet::from_points("r", d, flat);
    const auto euc = block_profile(set, NormKind::euclidean, 9), l1 = block_profile(set, NormKind::l1, 9);
    // |p|_2 <= |p|_1 <= sqrt(d) |p|_2 <= 2 |p|_2
    for (unsigned m = 0; m <= 9; ++m) {
      REQUIRE(l1.cumulative[m] <= euc.cumulative[m]);
      if (m < 9) REQUIRE(euc.cumulative[m] <= l1.cumulative[m + 1]);
    }
  }
}

TEST_CASE("digit-set counts match brute force") {
  std::mt19937_64 rng(106);
  for (int i = 0; i < kCases; ++i) {
    const unsigned k = 2 + static_cast<unsigned>(rng() % 9);
    std::vector<unsigned> allow;
    for (unsigned d = 0; d < k; ++d)
      if (rng() % 2) allow.push_back(d);
    if (allow.empty() || (allow.size() == 1 && allow[0] == 0)) allow = {1};
    const auto s = gen_digit_set(k, allow);
    std::uint64_t a = 1 + rng() % 1000000, b = 1 + rng() % 1000000;
    if (a > b) std::swap(a, b);
    if (b - a > 20000) b = a + 20000;
    std::uint64_t brute = 0;
    for (std::uint64_t x = a; x <= b; ++x) brute += oracle::digits_in(x, k, allow) ? 1 : 0;
    REQUIRE(s.exact_count()(a, b) == brute);
  }
}

TEST_CASE("pointwise operations commute") {
  std::mt19937_64 rng(107);
  for (int i = 0; i < kCases; ++i) {
    std::vector<std::uint64_t> a, b;
    for (int j = 0, n = 1 + static_cast<int>(rng() % 30); j < n; ++j) a.push_back(1 + rng() % 4000);
    for (int j = 0, n = 1 + static_cast<int>(rng() % 30); j < n; ++j) b.push_back(1 + rng() % 4000);
    const auto A = gen_finite(a), B = gen_finite(b);
    const std::uint64_t N = 1 + rng() % 8000;
    for (auto op : {PointwiseOp::sum, PointwiseOp::product}) {
      const auto ab = pointwise(A, B, op, N).elements(1, N), ba = pointwise(B, A, op, N).elements(1, N);
      REQUIRE(ab == ba);
      for (auto x : ab) REQUIRE(x <= N);
    }
  }
}
