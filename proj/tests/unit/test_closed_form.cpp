#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "zdim/closed_form.hpp"
#include "zdim/errors.hpp"
#include "zdim/generators.hpp"

using namespace zdim;

namespace {

// random prefix-free word set over base k: draw words, keep those compatible
InstantaneousCodeSpec random_code(std::mt19937_64& rng, unsigned max_k = 10, unsigned max_b = 8, unsigned max_len = 4) {
  InstantaneousCodeSpec spec;
  spec.k = 2 + static_cast<unsigned>(rng() % (max_k - 1));
  for (unsigned d = 1; d < spec.k; ++d)
    if (rng() % 2) spec.delta.push_back(d);
  if (spec.delta.empty()) spec.delta.push_back(1 + static_cast<unsigned>(rng() % (spec.k - 1)));
  const unsigned want = 1 + static_cast<unsigned>(rng() % max_b);
  for (int tries = 0; tries < 200 && spec.words.size() < want; ++tries) {
    std::string w;
    const unsigned len = 1 + static_cast<unsigned>(rng() % max_len);
    for (unsigned i = 0; i < len; ++i) w += digit_char(static_cast<unsigned>(rng() % spec.k));
    bool ok = true;
    for (const auto& v : spec.words) ok = ok && v.compare(0, w.size(), w) != 0 && w.compare(0, v.size(), v) != 0;
    if (ok) spec.words.push_back(w);
  }
  return spec;
}

}  // namespace

TEST_CASE("validate_code examples") {
  CHECK(validate_code({3, {2}, {"0", "2"}}).empty());
  const auto v = validate_code({3, {2}, {"0", "01"}});
  REQUIRE(v.size() == 1);
  CHECK(v[0].find("'0' is a prefix of '01'") != std::string::npos);
  CHECK_FALSE(validate_code({3, {0}, {"0"}}).empty());
  CHECK_FALSE(validate_code({3, {}, {"0"}}).empty());
  CHECK_FALSE(validate_code({3, {1}, {}}).empty());
  CHECK_FALSE(validate_code({3, {1}, {"", "1"}}).empty());
  CHECK_FALSE(validate_code({3, {1}, {"3"}}).empty());
  CHECK_FALSE(validate_code({3, {3}, {"1"}}).empty());
  CHECK_FALSE(validate_code({1, {1}, {"0"}}).empty());
  CHECK_FALSE(validate_code({3, {1}, {"1", "1"}}).empty());
}

TEST_CASE("code_dimension examples") {
  const auto c = code_dimension({3, {2}, {"0", "2"}});
  CHECK(c.s_star == doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(1e-12));
  CHECK(std::fabs(c.beta_at_s_star - 1) <= 1e-12);
  CHECK(c.lo <= c.s_star);
  CHECK(c.s_star <= c.hi);
  CHECK(code_dimension({2, {1}, {"0", "1"}}).s_star == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(code_dimension({2, {1}, {"00", "01", "10", "11"}}).s_star == doctest::Approx(1.0).epsilon(1e-12));
  const auto single = code_dimension({10, {1}, {"00"}});
  CHECK(single.s_star == 0.0);
  CHECK(single.iterations == 0);
}

TEST_CASE("digit_dimension examples") {
  std::vector<unsigned> no7{0, 1, 2, 3, 4, 5, 6, 8, 9};
  CHECK(std::fabs(digit_dimension(10, no7) - 0.9542425094393249) <= 1e-10);
  CHECK(digit_dimension(3, {0, 2}) == doctest::Approx(0.6309297535714574));
  CHECK(digit_dimension(2, {1}) == 0.0);
  CHECK_THROWS(digit_dimension(3, {0}));
}

TEST_CASE("digit dimension equals the code root of its code") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const unsigned k = 2 + static_cast<unsigned>(rng() % 15);
    std::vector<unsigned> g;
    for (unsigned d = 0; d < k; ++d)
      if (rng() % 2) g.push_back(d);
    if (g.empty() || (g.size() == 1 && g[0] == 0)) continue;
    const auto spec = digit_code(k, g);
    CHECK(spec.words.size() == g.size());
    CHECK(std::fabs(digit_dimension(k, g) - code_dimension(spec).s_star) <= 1e-10);
  }
}

TEST_CASE("beta is strictly decreasing and the root is tight") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 1000; ++i) {
    const auto spec = random_code(rng);
    REQUIRE(validate_code(spec).empty());
    std::uniform_real_distribution<double> u(0, 3);
    double s1 = u(rng), s2 = u(rng);
    if (s1 == s2) continue;
    if (s1 > s2) std::swap(s1, s2);
    CHECK(code_beta(spec, s1) > code_beta(spec, s2));
    const auto r = code_dimension(spec);
    CHECK(std::fabs(r.beta_at_s_star - 1) <= 1e-12);
    CHECK(std::fabs(code_beta(spec, r.s_star) - r.beta_at_s_star) <= 1e-15);
  }
}

TEST_CASE("substitution_dimension") {
  CHECK(substitution_dimension(sierpinski_rule()) == doctest::Approx(std::log2(3.0)));
  CHECK(substitution_dimension(parse_substitution_rule(3, 2, "000000000")) == doctest::Approx(2.0));
  CHECK(substitution_dimension(parse_substitution_rule(2, 3, "00000000")) == doctest::Approx(3.0));
  CHECK(substitution_dimension(parse_substitution_rule(3, 2, "0--------")) == 0.0);
  for (const auto& rule : {sierpinski_rule(), parse_substitution_rule(3, 2, "01-2--3--"),
                           parse_substitution_rule(3, 2, "0-0-0-0-0")}) {
    for (unsigned k = 0; k <= 5; ++k) {
      const double fk = static_cast<double>(gen_substitution(rule, k).points().size() / rule.d);
      const double fk1 = static_cast<double>(gen_substitution(rule, k + 1).points().size() / rule.d);
      CHECK(std::log2(fk1 / fk) / std::log2(static_cast<double>(rule.c)) ==
            doctest::Approx(substitution_dimension(rule)));
    }
  }
}

TEST_CASE("lattice_subspace_dimension") {
  CHECK(lattice_subspace_dimension(2, {1, 0, 0, 1}) == 2);
  CHECK(lattice_subspace_dimension(2, {2, 4}) == 1);
  CHECK(lattice_subspace_dimension(2, {1, 1, 2, 2}) == 1);
  CHECK(lattice_subspace_dimension(2, {0, 0}) == 0);
  CHECK(lattice_subspace_dimension(3, {1, 2, 3, 4, 5, 6, 7, 8, 9}) == 2);
  CHECK(lattice_subspace_dimension(3, {1, 2, 3, 4, 5, 6, 7, 8, 10}) == 3);
  // entries whose products overflow 64 bits
  const std::int64_t big = 3037000499;
  CHECK(lattice_subspace_dimension(2, {big, big - 1, big + 1, big}) == 2);
  CHECK(lattice_subspace_dimension(2, {big, 2 * big, 3, 6}) == 1);
}

TEST_CASE("closed-form CSV") {
  std::ostringstream out;
  write_closed_form_csv(out, {{"digits", "k=3,allow=02", 0.6309297535, 0.628571}});
  CHECK(out.str() == "family,params,closed_form,estimated,abs_error\ndigits,\"k=3,allow=02\",0.630930,0.628571,0.002359\n");
}
