#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "zdim/closed_form.hpp"
#include "zdim/errors.hpp"
#include "zdim/generators.hpp"
#include "zdim/set_algebra.hpp"

using namespace zdim;

namespace {

void check_membership(const IntegerSet& s, std::uint64_t hi, std::uint64_t seed) {
  const auto elems = s.elements(1, hi);
  std::mt19937_64 rng(seed);
  for (int i = 0; i < 10000; ++i) {
    const std::uint64_t n = 1 + rng() % hi;
    CHECK(s.contains(n) == std::binary_search(elems.begin(), elems.end(), n));
  }
  for (auto x : elems) REQUIRE(s.contains(x));
}

}  // namespace

TEST_CASE("basic families") {
  CHECK(gen_perfect_powers(2).elements(1, 16) == std::vector<std::uint64_t>{1, 4, 9, 16});
  CHECK(gen_basic({BasicSpec::Kind::perfect_powers, 2, {}}).elements(1, 20) ==
        std::vector<std::uint64_t>{1, 4, 9, 16});
  const auto p2 = gen_powers(2);
  for (unsigned n = 0; n < 63; ++n) CHECK(p2.exact_count()(1, std::uint64_t{1} << n) == n + 1);
  CHECK(gen_powers(10).elements(1, 1000000) == std::vector<std::uint64_t>{1, 10, 100, 1000, 10000, 100000, 1000000});
  CHECK(gen_finite({9, 3, 3, 7}).elements(1, 100) == std::vector<std::uint64_t>{3, 7, 9});
  CHECK(gen_all().exact_count()(5, 9) == 5);
  CHECK_THROWS_AS(gen_powers(1), ParameterError);
  CHECK_THROWS_AS(gen_perfect_powers(1), ParameterError);
  CHECK_THROWS_AS(gen_finite({0, 3}), ParameterError);
  const auto cubes = gen_perfect_powers(3);
  for (std::uint64_t n : {1ull, 7ull, 8ull, 26ull, 27ull, 1000000ull, 999999999999ull})
    CHECK(cubes.exact_count()(1, n) == oracle::floor_root(n, 3));
}

TEST_CASE("primes") {
  const auto P = gen_primes();
  std::uint64_t trial = 0;
  for (std::uint64_t n = 1; n <= 1000000; ++n) trial += oracle::prime_by_trial(n) ? 1 : 0;
  CHECK(trial == 78498);
  CHECK(count_range(P, 1, 1000000) == trial);
  CHECK(count_range(P, 1, std::uint64_t{1} << 24) == 1077871);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t n = rng() % 1000000000ull;
    CHECK(is_prime(n) == oracle::prime_by_trial(n));
  }
  CHECK(is_prime(18446744073709551557ull));  // largest 64-bit prime
  CHECK_FALSE(is_prime(3215031751ull));      // strong pseudoprime to bases 2, 3, 5, 7
  // a segment far from the origin, checked by trial division
  const std::uint64_t lo = 1000000000000ull;
  std::vector<std::uint64_t> expect;
  for (std::uint64_t n = lo; n < lo + 2000; ++n)
    if (oracle::prime_by_trial(n)) expect.push_back(n);
  CHECK(P.elements(lo, lo + 1999) == expect);
}

TEST_CASE("digit sets") {
  const auto cantor = gen_digit_set(3, {0, 2});
  for (std::uint64_t n = 1; n <= 3000; ++n) CHECK(cantor.contains(n) == oracle::digits_in(n, 3, {0, 2}));
  const std::vector<unsigned> no7{0, 1, 2, 3, 4, 5, 6, 8, 9};
  const auto m7 = gen_digit_set(10, no7);
  CHECK_FALSE(m7.contains(17));
  CHECK(m7.contains(18));
  std::uint64_t lo = 1;
  for (unsigned k = 1; k <= 6; ++k) {
    const std::uint64_t hi = lo * 10 - 1;
    std::uint64_t brute = 0;
    for (std::uint64_t n = lo; n <= hi; ++n) brute += oracle::digits_in(n, 10, no7) ? 1 : 0;
    CHECK(brute == 8 * static_cast<std::uint64_t>(std::pow(9, k - 1)));
    CHECK(m7.exact_count()(lo, hi) == brute);
    lo *= 10;
  }
  CHECK_THROWS(gen_digit_set(3, {0}));
  CHECK_THROWS(gen_digit_set(3, {3}));
}

TEST_CASE("code sets") {
  const auto c1 = gen_code_set({3, {2}, {"0", "2"}});
  CHECK(c1.elements(1, 100000) == gen_digit_set(3, {0, 2}).elements(1, 100000));
  const auto all = gen_code_set({2, {1}, {"0", "1"}});
  CHECK(all.exact_count()(1, 1 << 20) == 1 << 20);
  const auto sparse = gen_code_set({10, {1}, {"00"}});
  CHECK(sparse.elements(1, 100000000) == std::vector<std::uint64_t>{1, 100, 10000, 1000000, 100000000});
  CHECK_THROWS_AS(gen_code_set({3, {1}, {"0", "01"}}), CodeError);
  CHECK_THROWS_AS(gen_code_set({3, {0}, {"0"}}), CodeError);

  const InstantaneousCodeSpec mixed{4, {1, 3}, {"0", "12", "3", "220"}};
  const auto s = gen_code_set(mixed);
  for (std::uint64_t n = 1; n <= 20000; ++n)
    CHECK(s.contains(n) == oracle::code_member(n, 4, mixed.delta, mixed.words));
  CHECK(s.exact_count()(1, 20000) == s.elements(1, 20000).size());
}

TEST_CASE("code set strings parse uniquely") {
  const InstantaneousCodeSpec spec{5, {2, 4}, {"1", "03", "02", "40", "3"}};
  REQUIRE(validate_code(spec).empty());
  const auto s = gen_code_set(spec);
  for (std::uint64_t n : s.elements(1, 200000)) {
    const std::string w = oracle::base_k(n, 5);
    std::vector<std::uint64_t> ways(w.size() + 1, 0);
    ways[1] = 1;
    for (std::size_t i = 1; i < w.size(); ++i)
      for (const auto& b : spec.words)
        if (w.compare(i, b.size(), b) == 0) ways[i + b.size()] += ways[i];
    REQUIRE(ways[w.size()] == 1);
  }
}

TEST_CASE("pascal mod 2 against binomial parity") {
  const auto rows = oracle::pascal_parity(1 << 10);
  const auto pts = gen_pascal_mod2(10).points();
  std::set<std::pair<std::int64_t, std::int64_t>> got;
  for (std::size_t i = 0; i < pts.size(); i += 2) got.insert({pts[i], pts[i + 1]});
  std::set<std::pair<std::int64_t, std::int64_t>> want;
  for (unsigned s = 0; s <= (1u << 10); ++s)
    for (unsigned m = 0; m <= s; ++m)
      if (rows[s][m]) want.insert({m, s - m});
  CHECK(got == want);
  CHECK(got.count({1, 2}) == 1);
  CHECK(got.count({1, 1}) == 0);
  CHECK(*gen_pascal_mod2(10).cardinality() == Count(got.size()));
  CHECK_THROWS_AS(gen_pascal_mod2(21), DepthError);
}

TEST_CASE("pascal L1 counts to depth 14") {
  const auto prof = block_profile(gen_pascal_mod2(14), NormKind::l1, 14);
  Count three = 1;
  for (unsigned n = 0; n <= 14; ++n) {
    CHECK(abs(Count(prof.cumulative[n] - three)) <= 2);
    three *= 3;
  }
}

namespace {

using PointSet = std::set<std::vector<std::int64_t>>;

PointSet zero_based(const LatticePointSet& s) {
  PointSet out;
  const unsigned d = s.dimension();
  const auto flat = s.points();
  for (std::size_t i = 0; i < flat.size(); i += d) {
    std::vector<std::int64_t> p(flat.begin() + i, flat.begin() + i + d);
    for (auto& x : p) --x;
    out.insert(p);
  }
  return out;
}

// quarter turn of a side-L grid: (x, y) -> (L-1-y, x)
std::vector<std::int64_t> turn(std::vector<std::int64_t> p, std::int64_t L, int times) {
  for (int i = 0; i < times; ++i) p = {L - 1 - p[1], p[0]};
  return p;
}

}  // namespace

TEST_CASE("substitution fractals are self-similar cell by cell") {
  const std::vector<SubstitutionRule> rules{sierpinski_rule(), parse_substitution_rule(2, 2, "0123"),
                                            parse_substitution_rule(3, 2, "01-2--3--"),
                                            parse_substitution_rule(3, 2, "0-3-2-1-0"),
                                            parse_substitution_rule(2, 3, "00-0-00-")};
  for (const auto& rule : rules) {
    CAPTURE(rule.rule_string());
    for (unsigned k = 0; k < 6; ++k) {
      if (rule.d == 3 && k > 4) break;
      const auto prev = zero_based(gen_substitution(rule, k));
      const auto next = zero_based(gen_substitution(rule, k + 1));
      const std::int64_t L = static_cast<std::int64_t>(std::pow(rule.c, k));
      PointSet built;
      for (std::size_t idx = 0; idx < rule.cells.size(); ++idx) {
        if (rule.cells[idx] == SubstitutionRule::kNo) continue;
        std::vector<std::int64_t> cell(rule.d);
        std::size_t rest = idx;
        for (unsigned i = rule.d; i-- > 0;) {
          cell[i] = static_cast<std::int64_t>(rest % rule.c);
          rest /= rule.c;
        }
        for (const auto& p : prev) {
          auto q = rule.d == 2 ? turn(p, L, rule.cells[idx]) : p;
          for (unsigned i = 0; i < rule.d; ++i) q[i] += cell[i] * L;
          built.insert(q);
        }
      }
      CHECK(built == next);
    }
  }
}

TEST_CASE("substitution examples") {
  for (unsigned k = 0; k <= 6; ++k) {
    const auto f = gen_substitution(sierpinski_rule(), k);
    CHECK(f.points().size() / 2 == static_cast<std::size_t>(std::pow(3, k)));
  }
  const auto full = gen_substitution(parse_substitution_rule(3, 2, "000000000"), 3);
  const auto pts = zero_based(full);
  CHECK(pts.size() == 27u * 27u);
  CHECK(*pts.begin() == std::vector<std::int64_t>{0, 0});
  CHECK(*pts.rbegin() == std::vector<std::int64_t>{26, 26});
  CHECK(gen_substitution(sierpinski_rule(), 0).points() == std::vector<std::int64_t>{1, 1});
  CHECK(gen_substitution(parse_substitution_rule(2, 3, "0-------"), 0).points() == std::vector<std::int64_t>{1, 1, 1});

  CHECK_THROWS_AS(parse_substitution_rule(2, 2, "-000"), RuleError);
  CHECK_THROWS_AS(parse_substitution_rule(2, 2, "00z-"), RuleError);
  CHECK_THROWS_AS(parse_substitution_rule(2, 2, "000"), RuleError);
  CHECK_THROWS_AS(parse_substitution_rule(2, 3, "01------"), RuleError);
  CHECK_THROWS_AS(gen_substitution(parse_substitution_rule(2, 2, "0000"), 20, 1000), DepthError);
}

TEST_CASE("rotate_quarter is a quarter turn") {
  std::int64_t x = 0, y = 0;
  rotate_quarter(x, y, 4, 1);
  CHECK(x == 3);
  CHECK(y == 0);
  x = 1;
  y = 2;
  rotate_quarter(x, y, 5, 4);
  CHECK(x == 1);
  CHECK(y == 2);
}

TEST_CASE("sublattices") {
  const auto z2 = block_profile(gen_sublattice(2, {1, 0, 0, 1}, 5), NormKind::euclidean, 2);
  for (unsigned n = 0; n <= 2; ++n) {
    const int r = 1 << n;
    std::size_t brute = 0;
    for (int a = -r; a <= r; ++a)
      for (int b = -r; b <= r; ++b) brute += (a * a + b * b <= r * r && (a || b)) ? 1 : 0;
    CHECK(z2.cumulative[n] == brute);
  }
  // the generated points are exactly the lattice points within the radius
  const auto pts = gen_sublattice(2, {2, 4, 3, 0}, 30).points();
  std::set<std::pair<std::int64_t, std::int64_t>> got, want;
  for (std::size_t i = 0; i < pts.size(); i += 2) got.insert({pts[i], pts[i + 1]});
  for (int u = -40; u <= 40; ++u)
    for (int v = -40; v <= 40; ++v) {
      const std::int64_t x = 2 * u + 3 * v, y = 4 * u;
      if (x * x + y * y <= 900) want.insert({x, y});
    }
  CHECK(got == want);
  CHECK_THROWS_AS(gen_sublattice(2, {1, 2, 3}, 5), ParameterError);
}

TEST_CASE("tower function") {
  CHECK(tower(1) == 1);
  CHECK(tower(2) == 2);
  CHECK(tower(3) == 4);
  CHECK(tower(4) == 16);
  CHECK(tower(5) == 65536);
  CHECK_THROWS_AS(tower(6), RangeError);
  CHECK(is_tower_value(16));
  CHECK_FALSE(is_tower_value(8));
}

TEST_CASE("tower pair construction") {
  const auto pair = gen_tower_pair({0.3, 0.5, 0.7});
  CHECK_FALSE(pair.swapped());
  for (unsigned n = 2; n <= 5; ++n) {
    const std::uint64_t t = tower(n);
    const double want = std::ceil(std::exp2(0.3 * static_cast<double>(t)));
    if (t <= 16) CHECK(pair.a_level(t) == Count(static_cast<std::uint64_t>(want)));
  }
  CHECK(pair.a_level(1) == 1);  // clipped: only one number has bit-length 1
  std::set<unsigned> lengths;
  for (auto x : pair.a().elements(1, (1u << 17) - 1)) lengths.insert(oracle::bits(x));
  for (auto x : pair.b().elements(1, (1u << 17) - 1)) lengths.insert(oracle::bits(x));
  CHECK(lengths == std::set<unsigned>{1, 2, 4, 16});
  for (unsigned t : {1u, 2u, 4u, 16u}) {
    const std::uint64_t lo = std::uint64_t{1} << (t - 1), hi = (std::uint64_t{1} << t) - 1;
    CHECK(pair.a_level(t) == pair.a().elements(lo, hi).size());
    CHECK(pair.b_level(t) == pair.b().elements(lo, hi).size());
  }

  // exhaustive A + B at bit-length 17
  std::set<std::uint64_t> sums;
  const auto as = pair.a().elements(1, 1u << 17), bs = pair.b().elements(1, 1u << 17);
  for (auto a : as)
    for (auto b : bs)
      if (oracle::bits(a) == 16 && oracle::bits(b) == 16) sums.insert(a + b);
  std::set<std::uint64_t> all17;
  for (auto a : as)
    for (auto b : bs)
      if (oracle::bits(a + b) == 17) all17.insert(a + b);
  const std::size_t c17 = all17.size();
  CHECK(all17 == sums);
  const double lower = std::exp2(0.7 * 16) - std::exp2(0.4 * 16), upper = 2 * std::exp2(0.7 * 16);
  CHECK(static_cast<double>(c17) >= lower);
  CHECK(static_cast<double>(c17) <= upper);
  const auto t16 = pair.analytic_counts(16);
  CHECK(t16.c_next == c17);
  CHECK(t16.within_bounds);
  CHECK(t16.log2_lower == doctest::Approx(std::log2(lower)));
  CHECK(t16.log2_upper == doctest::Approx(std::log2(upper)));

  const auto t5 = pair.analytic_counts(65536);
  CHECK(t5.within_bounds);
  CHECK(t5.entropy_ratio == doctest::Approx(0.7).epsilon(0.001));
}

TEST_CASE("tower pair parameters") {
  CHECK_THROWS_AS(gen_tower_pair({0.5, 0.5, 0.7}), ParameterError);
  CHECK_THROWS_AS(gen_tower_pair({0.3, 0.5, 0.9}), ParameterError);  // gamma > alpha + beta
  CHECK_THROWS_AS(gen_tower_pair({0.3, 0.5, 0.4}), ParameterError);  // gamma < beta
  const auto swapped = gen_tower_pair({0.5, 0.3, 0.7});
  const auto plain = gen_tower_pair({0.3, 0.5, 0.7});
  CHECK(swapped.swapped());
  CHECK(swapped.a_level(16) == plain.b_level(16));
  CHECK(swapped.b_level(16) == plain.a_level(16));
}

TEST_CASE("streams agree with membership on random probes") {
  check_membership(gen_perfect_powers(2), 1u << 30, 1);
  check_membership(gen_perfect_powers(3), 1u << 30, 2);
  check_membership(gen_powers(3), 1u << 30, 3);
  check_membership(gen_primes(), 1u << 22, 4);
  check_membership(gen_digit_set(7, {0, 3, 5}), 1u << 24, 5);
  check_membership(gen_code_set({4, {1, 3}, {"0", "12", "3", "220"}}), 1u << 24, 6);
  const auto pair = gen_tower_pair({0.3, 0.5, 0.7});
  check_membership(pair.a(), (1u << 17) - 1, 7);
  check_membership(pair.b(), (1u << 17) - 1, 8);
}
