#include "zdim/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <set>

#include "automaton.hpp"
#include "zdim/closed_form.hpp"
#include "zdim/errors.hpp"

namespace zdim {

namespace {

constexpr std::uint64_t kU64Max = std::numeric_limits<std::uint64_t>::max();

}  // namespace

std::vector<unsigned> base_digits(std::uint64_t n, unsigned k) {
  std::vector<unsigned> out;
  if (n == 0) return {0};
  while (n) {
    out.push_back(static_cast<unsigned>(n % k));
    n /= k;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

char digit_char(unsigned d) { return d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + d - 10); }

int digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  return -1;
}

// ---- basic ----

IntegerSet gen_powers(std::uint64_t base) {
  if (base < 2) throw ParameterError("powers: base must be at least 2");
  // floor(log_b x) + 1 for x >= 1
  auto upto = [base](std::uint64_t x) -> std::uint64_t {
    if (x == 0) return 0;
    std::uint64_t n = 1;
    for (std::uint64_t p = 1; p <= x / base; p *= base) ++n;
    return n;
  };
  IntegerSet set("powers:b=" + std::to_string(base), [base](std::uint64_t lo, std::uint64_t hi, const IntegerSet::Visitor& v) {
    for (std::uint64_t p = 1;; p *= base) {
      if (p >= lo && !v(p)) return;
      if (p > hi / base) return;
      if (p * base > hi) return;
    }
  });
  set.with_membership([base](std::uint64_t n) {
    if (n == 0) return false;
    while (n % base == 0) n /= base;
    return n == 1;
  });
  set.with_exact_count([upto](std::uint64_t a, std::uint64_t b) { return Count(a > b ? 0 : upto(b) - upto(a - 1)); });
  return set;
}

IntegerSet gen_perfect_powers(unsigned m) {
  if (m < 2) throw ParameterError("perfect powers: exponent must be at least 2");
  const std::string name = m == 2 ? "squares" : m == 3 ? "cubes" : "perfect-powers:m=" + std::to_string(m);
  IntegerSet set(name, [m](std::uint64_t lo, std::uint64_t hi, const IntegerSet::Visitor& v) {
    std::uint64_t r = iroot(lo - 1, m) + 1;
    for (;; ++r) {
      Wide p = 1;
      for (unsigned i = 0; i < m && p <= hi; ++i) p *= r;
      if (p > hi) return;
      if (!v(static_cast<std::uint64_t>(p))) return;
    }
  });
  set.with_membership([m](std::uint64_t n) {
    const std::uint64_t r = iroot(n, m);
    Wide p = 1;
    for (unsigned i = 0; i < m; ++i) p *= r;
    return n >= 1 && p == n;
  });
  set.with_exact_count([m](std::uint64_t a, std::uint64_t b) {
    return Count(a > b ? 0 : iroot(b, m) - iroot(a - 1, m));
  });
  return set;
}

IntegerSet gen_finite(std::vector<std::uint64_t> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (!elements.empty() && elements.front() == 0) throw ParameterError("finite set: elements must be positive");
  return IntegerSet::from_sorted("finite", std::move(elements));
}

IntegerSet gen_all() {
  IntegerSet set("all", [](std::uint64_t lo, std::uint64_t hi, const IntegerSet::Visitor& v) {
    for (std::uint64_t x = lo;; ++x) {
      if (!v(x) || x == hi) return;
    }
  });
  set.with_membership([](std::uint64_t n) { return n >= 1; });
  set.with_exact_count([](std::uint64_t a, std::uint64_t b) { return Count(a > b ? 0 : b - a + 1); });
  set.with_level_count([](std::uint64_t k) {
    if (k == 0) return Count(0);
    return Count(1) << static_cast<unsigned>(k - 1);
  });
  return set;
}

IntegerSet gen_basic(const BasicSpec& spec) {
  switch (spec.kind) {
    case BasicSpec::Kind::powers: return gen_powers(spec.param);
    case BasicSpec::Kind::perfect_powers: return gen_perfect_powers(static_cast<unsigned>(spec.param));
    case BasicSpec::Kind::primes: return gen_primes();
    case BasicSpec::Kind::finite: return gen_finite(spec.elements);
    case BasicSpec::Kind::all: return gen_all();
  }
  throw ParameterError("unknown basic kind");
}

// ---- digit patterns ----

namespace {

IntegerSet automaton_set(std::string name, std::shared_ptr<const detail::CodeAutomaton> dfa) {
  IntegerSet set(std::move(name), [dfa](std::uint64_t lo, std::uint64_t hi, const IntegerSet::Visitor& v) {
    dfa->enumerate(lo, hi, v);
  });
  set.with_membership([dfa](std::uint64_t n) { return dfa->accepts(n); });
  set.with_exact_count([dfa](std::uint64_t a, std::uint64_t b) {
    if (a > b) return Count(0);
    return Count(dfa->count_upto(b) - dfa->count_upto(a - 1));
  });
  if (dfa->base() == 2)
    set.with_level_count([dfa](std::uint64_t k) { return k > 64 ? Count(0) : dfa->count_length(static_cast<unsigned>(k)); });
  return set;
}

}  // namespace

InstantaneousCodeSpec digit_code(unsigned k, const std::vector<unsigned>& allowed) {
  InstantaneousCodeSpec spec;
  spec.k = k;
  std::set<unsigned> uniq(allowed.begin(), allowed.end());
  for (unsigned d : uniq) {
    if (d >= k) throw ParameterError("digit " + std::to_string(d) + " is not a base-" + std::to_string(k) + " digit");
    spec.words.emplace_back(1, digit_char(d));
    if (d != 0) spec.delta.push_back(d);
  }
  return spec;
}

IntegerSet gen_digit_set(unsigned k, const std::vector<unsigned>& allowed) {
  if (k < 2 || k > 36) throw ParameterError("digit set: base must be in [2, 36]");
  auto spec = digit_code(k, allowed);
  if (spec.delta.empty()) throw ParameterError("digit set: allowed digits must include a nonzero digit");
  std::string allow;
  for (const auto& w : spec.words) allow += w;
  return automaton_set("digits:k=" + std::to_string(k) + ",allow=" + allow,
                       std::make_shared<const detail::CodeAutomaton>(spec.k, spec.delta, spec.words));
}

IntegerSet gen_code_set(const InstantaneousCodeSpec& spec) {
  auto violations = validate_code(spec);
  if (!violations.empty()) throw CodeError(std::move(violations));
  std::string name = "code:k=" + std::to_string(spec.k) + ",delta=";
  for (unsigned d : spec.delta) name += digit_char(d);
  name += ",B=";
  for (std::size_t i = 0; i < spec.words.size(); ++i) name += (i ? "|" : "") + spec.words[i];
  return automaton_set(std::move(name), std::make_shared<const detail::CodeAutomaton>(spec.k, spec.delta, spec.words));
}

// ---- Pascal triangle mod 2 ----

LatticePointSet gen_pascal_mod2(unsigned depth) {
  if (depth > 20) throw DepthError("pascal: depth " + std::to_string(depth) + " exceeds the limit of 20");
  const std::int64_t top = std::int64_t{1} << depth;
  Coverage cov;
  cov.l1 = static_cast<Wide>(top);
  cov.euclidean_sq = (static_cast<Wide>(top) * static_cast<Wide>(top)) / 2;
  LatticePointSet set("pascal:depth=" + std::to_string(depth), 2,
                      [top](const LatticePointSet::PointVisitor& visit) {
                        std::int64_t p[2];
                        for (std::int64_t s = 0; s <= top; ++s) {
                          // m runs over the submasks of s; then m & (s - m) == 0
                          for (std::int64_t m = s;; m = (m - 1) & s) {
                            p[0] = m;
                            p[1] = s - m;
                            if (!visit(Coords(p, 2))) return;
                            if (m == 0) break;
                          }
                        }
                      },
                      cov);
  Count card = 2;  // the row 2^depth holds just its two endpoints
  Count three = 1;
  for (unsigned i = 0; i < depth; ++i) three *= 3;
  set.with_cardinality(card + three);
  return set;
}

// ---- substitution fractals ----

unsigned SubstitutionRule::survivors() const {
  return static_cast<unsigned>(std::count_if(cells.begin(), cells.end(), [](int a) { return a != kNo; }));
}

std::string SubstitutionRule::rule_string() const {
  std::string s;
  for (int a : cells) s += a == kNo ? '-' : static_cast<char>('0' + a);
  return s;
}

void validate_rule(const SubstitutionRule& r) {
  if (r.c < 2) throw RuleError("substitution: contraction base c must be at least 2");
  if (r.d < 1) throw RuleError("substitution: dimension d must be at least 1");
  Wide cells = 1;
  for (unsigned i = 0; i < r.d; ++i) {
    cells *= r.c;
    if (cells > 1'000'000) throw RuleError("substitution: c^d is too large");
  }
  if (r.cells.size() != static_cast<std::size_t>(cells))
    throw RuleError("substitution: rule has " + std::to_string(r.cells.size()) + " cells, expected " +
                    std::to_string(static_cast<std::uint64_t>(cells)));
  if (r.cells[0] != 0) throw RuleError("substitution: the first cell must map to R0");
  for (int a : r.cells) {
    if (a != SubstitutionRule::kNo && (a < 0 || a > 3)) throw RuleError("substitution: bad cell entry");
    if (r.d != 2 && a > 0) throw RuleError("substitution: rotations R1-R3 need d = 2");
  }
}

SubstitutionRule parse_substitution_rule(unsigned c, unsigned d, const std::string& rule) {
  SubstitutionRule r;
  r.c = c;
  r.d = d;
  for (char ch : rule) {
    if (ch == '-' || ch == 'x' || ch == 'n') r.cells.push_back(SubstitutionRule::kNo);
    else if (ch >= '0' && ch <= '3') r.cells.push_back(ch - '0');
    else throw RuleError(std::string("substitution: bad rule character '") + ch + "'");
  }
  validate_rule(r);
  return r;
}

SubstitutionRule sierpinski_rule() { return parse_substitution_rule(2, 2, "000-"); }

void rotate_quarter(std::int64_t& x, std::int64_t& y, std::int64_t L, int j) {
  for (int i = 0; i < (j & 3); ++i) {
    const std::int64_t nx = L - 1 - y;
    y = x;
    x = nx;
  }
}

namespace {

struct SubstWalker {
  const SubstitutionRule& rule;
  const LatticePointSet::PointVisitor& visit;
  std::vector<std::int64_t> side;  // side[k] = c^k
  std::vector<std::int64_t> point;

  bool run(unsigned k, int orient, std::vector<std::int64_t>& base) {
    if (k == 0) {
      for (unsigned i = 0; i < rule.d; ++i) point[i] = base[i] + 1;
      return visit(Coords(point.data(), rule.d));
    }
    const std::int64_t sub = side[k - 1];
    std::vector<std::int64_t> q(rule.d);
    for (std::size_t idx = 0; idx < rule.cells.size(); ++idx) {
      const int a = rule.cells[idx];
      if (a == SubstitutionRule::kNo) continue;
      std::size_t rest = idx;
      for (unsigned i = rule.d; i-- > 0;) {
        q[i] = static_cast<std::int64_t>(rest % rule.c);
        rest /= rule.c;
      }
      if (rule.d == 2) rotate_quarter(q[0], q[1], rule.c, orient);
      std::vector<std::int64_t> next(base);
      for (unsigned i = 0; i < rule.d; ++i) next[i] += q[i] * sub;
      if (!run(k - 1, (orient + a) & 3, next)) return false;
    }
    return true;
  }
};

}  // namespace

LatticePointSet gen_substitution(const SubstitutionRule& rule, unsigned depth, std::uint64_t budget) {
  validate_rule(rule);
  Wide cells = 1;
  std::vector<std::int64_t> side{1};
  for (unsigned k = 0; k < depth; ++k) {
    if (side.back() > (std::int64_t{1} << 40)) throw DepthError("substitution: depth too large");
    side.push_back(side.back() * rule.c);
  }
  for (unsigned k = 0; k < depth * rule.d; ++k) {
    cells *= rule.c;
    if (cells > budget)
      throw DepthError("substitution: c^(d*depth) exceeds the enumeration budget of " + std::to_string(budget));
  }
  const Wide extent = static_cast<Wide>(side.back());
  Coverage cov{extent * extent, extent};
  Count card = 1;
  for (unsigned k = 0; k < depth; ++k) card *= rule.survivors();
  LatticePointSet set("subst:c=" + std::to_string(rule.c) + ",d=" + std::to_string(rule.d) + ",rule=" +
                          rule.rule_string() + ",depth=" + std::to_string(depth),
                      rule.d,
                      [rule, depth, side](const LatticePointSet::PointVisitor& visit) {
                        SubstWalker w{rule, visit, side, std::vector<std::int64_t>(rule.d)};
                        std::vector<std::int64_t> base(rule.d, 0);
                        w.run(depth, 0, base);
                      },
                      cov);
  set.with_cardinality(card);
  return set;
}

// ---- sublattices ----

namespace {

// Integer row echelon form by gcd steps; returns the nonzero rows, which
// form a basis of the lattice spanned by the input rows.
std::vector<std::vector<std::int64_t>> lattice_basis(unsigned d, const std::vector<std::int64_t>& flat) {
  std::vector<std::vector<std::int64_t>> rows;
  for (std::size_t i = 0; i + d <= flat.size(); i += d) rows.emplace_back(flat.begin() + i, flat.begin() + i + d);
  std::size_t r = 0;
  for (unsigned col = 0; col < d && r < rows.size(); ++col) {
    for (;;) {
      std::size_t pivot = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][col] != 0 && (pivot == rows.size() || std::llabs(rows[i][col]) < std::llabs(rows[pivot][col])))
          pivot = i;
      if (pivot == rows.size()) break;
      std::swap(rows[r], rows[pivot]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        const std::int64_t q = rows[i][col] / rows[r][col];
        for (unsigned j = 0; j < d; ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][col] != 0) done = false;
      }
      if (done) {
        ++r;
        break;
      }
    }
  }
  rows.resize(r);
  return rows;
}

}  // namespace

LatticePointSet gen_sublattice(unsigned d, const std::vector<std::int64_t>& vectors, std::uint64_t radius) {
  if (d == 0 || vectors.empty() || vectors.size() % d != 0) throw ParameterError("sublattice: bad vector list");
  const auto basis = lattice_basis(d, vectors);
  const std::size_t k = basis.size();
  // coefficient bounds from the inverse Gram matrix: |c_i| <= R sqrt((G^-1)_ii)
  std::vector<std::int64_t> bound(k, 0);
  if (k > 0) {
    std::vector<double> g(k * k), inv(k * k, 0.0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        double acc = 0;
        for (unsigned t = 0; t < d; ++t) acc += static_cast<double>(basis[i][t]) * static_cast<double>(basis[j][t]);
        g[i * k + j] = acc;
      }
    for (std::size_t i = 0; i < k; ++i) inv[i * k + i] = 1.0;
    for (std::size_t c = 0; c < k; ++c) {
      std::size_t p = c;
      for (std::size_t i = c + 1; i < k; ++i)
        if (std::fabs(g[i * k + c]) > std::fabs(g[p * k + c])) p = i;
      for (std::size_t j = 0; j < k; ++j) {
        std::swap(g[c * k + j], g[p * k + j]);
        std::swap(inv[c * k + j], inv[p * k + j]);
      }
      const double piv = g[c * k + c];
      for (std::size_t j = 0; j < k; ++j) {
        g[c * k + j] /= piv;
        inv[c * k + j] /= piv;
      }
      for (std::size_t i = 0; i < k; ++i) {
        if (i == c) continue;
        const double f = g[i * k + c];
        for (std::size_t j = 0; j < k; ++j) {
          g[i * k + j] -= f * g[c * k + j];
          inv[i * k + j] -= f * inv[c * k + j];
        }
      }
    }
    for (std::size_t i = 0; i < k; ++i)
      bound[i] = static_cast<std::int64_t>(std::floor(static_cast<double>(radius) * std::sqrt(std::max(0.0, inv[i * k + i])))) + 1;
  }
  const Wide r2 = static_cast<Wide>(radius) * radius;
  Coverage cov{r2, static_cast<Wide>(radius)};
  return LatticePointSet("sublattice", d,
                         [d, basis, bound, r2](const LatticePointSet::PointVisitor& visit) {
                           const std::size_t k = basis.size();
                           std::vector<std::int64_t> coef(k), pt(d);
                           for (std::size_t i = 0; i < k; ++i) coef[i] = -bound[i];
                           for (;;) {
                             std::fill(pt.begin(), pt.end(), 0);
                             for (std::size_t i = 0; i < k; ++i)
                               for (unsigned t = 0; t < d; ++t) pt[t] += coef[i] * basis[i][t];
                             if (norm_sq(Coords(pt.data(), d)) <= r2 && !visit(Coords(pt.data(), d))) return;
                             std::size_t i = 0;
                             while (i < k && coef[i] == bound[i]) {
                               coef[i] = -bound[i];
                               ++i;
                             }
                             if (i == k) return;
                             ++coef[i];
                           }
                         },
                         cov);
}

}  // namespace zdim
