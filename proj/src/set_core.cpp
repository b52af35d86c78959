#include "zdim/set_core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <limits>
#include <memory>
#include <ostream>
#include <sstream>

#include "zdim/errors.hpp"

namespace zdim {

std::uint64_t default_budget() {
  if (const char* env = std::getenv("ZDIM_BUDGET")) {
    std::uint64_t v = 0;
    const char* end = env + std::char_traits<char>::length(env);
    auto [ptr, ec] = std::from_chars(env, end, v);
    if (ec == std::errc() && ptr == end && v > 0) return v;
  }
  return kDefaultBudget;
}

std::string to_string(NormKind kind) {
  switch (kind) {
    case NormKind::value: return "value";
    case NormKind::euclidean: return "euclidean";
    case NormKind::l1: return "l1";
    case NormKind::binary_length: return "binary-length";
  }
  return "?";
}

NormKind parse_norm_kind(const std::string& text) {
  if (text == "value") return NormKind::value;
  if (text == "euclidean" || text == "l2") return NormKind::euclidean;
  if (text == "l1") return NormKind::l1;
  if (text == "binary-length" || text == "binary") return NormKind::binary_length;
  throw UsageError("unknown norm kind '" + text + "'");
}

// ---- IntegerSet ----

IntegerSet::IntegerSet(std::string name, Enumerator enumerator)
    : name_(std::move(name)), enumerator_(std::move(enumerator)) {}

IntegerSet& IntegerSet::with_membership(Membership m) {
  membership_ = std::move(m);
  return *this;
}

IntegerSet& IntegerSet::with_exact_count(ExactCount c) {
  exact_count_ = std::move(c);
  return *this;
}

IntegerSet& IntegerSet::with_level_count(LevelCount c) {
  level_count_ = std::move(c);
  return *this;
}

void IntegerSet::enumerate(std::uint64_t lo, std::uint64_t hi, const Visitor& visit) const {
  if (lo == 0) lo = 1;
  if (lo > hi || !enumerator_) return;
  enumerator_(lo, hi, visit);
}

bool IntegerSet::contains(std::uint64_t n) const {
  if (n == 0) return false;
  if (membership_) return membership_(n);
  bool found = false;
  enumerate(n, n, [&](std::uint64_t) {
    found = true;
    return false;
  });
  return found;
}

std::vector<std::uint64_t> IntegerSet::elements(std::uint64_t lo, std::uint64_t hi,
                                                std::uint64_t budget) const {
  std::vector<std::uint64_t> out;
  enumerate(lo, hi, [&](std::uint64_t x) {
    if (out.size() >= budget) throw BudgetExceeded(Count(out.size()), budget);
    out.push_back(x);
    return true;
  });
  return out;
}

IntegerSet IntegerSet::from_sorted(std::string name, std::vector<std::uint64_t> elements) {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (elements[i] == 0) throw ParameterError("finite set: elements must be positive");
    if (i > 0 && elements[i] <= elements[i - 1])
      throw ParameterError("finite set: elements must be strictly increasing");
  }
  auto data = std::make_shared<const std::vector<std::uint64_t>>(std::move(elements));
  IntegerSet set(std::move(name), [data](std::uint64_t lo, std::uint64_t hi, const Visitor& visit) {
    for (auto it = std::lower_bound(data->begin(), data->end(), lo); it != data->end() && *it <= hi; ++it)
      if (!visit(*it)) return;
  });
  set.with_membership([data](std::uint64_t n) { return std::binary_search(data->begin(), data->end(), n); });
  set.with_exact_count([data](std::uint64_t a, std::uint64_t b) {
    if (a > b) return Count(0);
    auto lo = std::lower_bound(data->begin(), data->end(), a);
    auto hi = std::upper_bound(data->begin(), data->end(), b);
    return Count(static_cast<std::uint64_t>(hi - lo));
  });
  return set;
}

IntegerSet IntegerSet::empty() { return from_sorted("empty", {}); }

// ---- LatticePointSet ----

LatticePointSet::LatticePointSet(std::string name, unsigned dimension, Enumerator enumerator,
                                 Coverage coverage)
    : name_(std::move(name)), dimension_(dimension), enumerator_(std::move(enumerator)), coverage_(coverage) {
  if (dimension_ == 0) throw ParameterError("lattice dimension must be positive");
}

LatticePointSet& LatticePointSet::with_norm_counter(NormCounter c) {
  norm_counter_ = std::move(c);
  return *this;
}

LatticePointSet& LatticePointSet::with_cardinality(Count c) {
  cardinality_ = std::move(c);
  return *this;
}

void LatticePointSet::enumerate(const PointVisitor& visit) const {
  if (enumerator_) enumerator_(visit);
}

std::vector<std::int64_t> LatticePointSet::points(std::uint64_t budget) const {
  std::vector<std::int64_t> out;
  std::uint64_t n = 0;
  enumerate([&](Coords p) {
    if (++n > budget) throw BudgetExceeded(Count(n - 1), budget);
    out.insert(out.end(), p.begin(), p.end());
    return true;
  });
  return out;
}

LatticePointSet LatticePointSet::from_points(std::string name, unsigned dimension,
                                             std::vector<std::int64_t> flat_coords) {
  if (dimension == 0 || flat_coords.size() % dimension != 0)
    throw ParameterError("point list does not match the declared dimension");
  const Count card = flat_coords.size() / dimension;
  auto data = std::make_shared<const std::vector<std::int64_t>>(std::move(flat_coords));
  Coverage everything{std::numeric_limits<Wide>::max(), std::numeric_limits<Wide>::max()};
  LatticePointSet set(std::move(name), dimension,
                      [data, dimension](const PointVisitor& visit) {
                        for (std::size_t i = 0; i < data->size(); i += dimension)
                          if (!visit(Coords(data->data() + i, dimension))) return;
                      },
                      everything);
  set.with_cardinality(card);
  return set;
}

Wide norm_sq(Coords p) {
  Wide acc = 0;
  for (auto x : p) {
    const Wide a = static_cast<Wide>(x < 0 ? -static_cast<__int128>(x) : x);
    acc += a * a;
  }
  return acc;
}

Wide norm_l1(Coords p) {
  Wide acc = 0;
  for (auto x : p) acc += static_cast<Wide>(x < 0 ? -static_cast<__int128>(x) : x);
  return acc;
}

bool CountProfile::all_zero() const {
  return std::all_of(blocks.begin(), blocks.end(), [](const Count& c) { return c == 0; }) &&
         std::all_of(cumulative.begin(), cumulative.end(), [](const Count& c) { return c == 0; });
}

// ---- counting ----

Count count_range(const IntegerSet& set, std::uint64_t a, std::uint64_t b, std::uint64_t budget) {
  if (a == 0) throw RangeError("count_range: lower end must be at least 1");
  if (a > b) throw RangeError("count_range: empty range, a > b");
  if (set.has_exact_count()) return set.exact_count()(a, b);
  std::uint64_t n = 0;
  set.enumerate(a, b, [&](std::uint64_t) {
    if (n == budget) throw BudgetExceeded(Count(n), budget);
    ++n;
    return true;
  });
  return Count(n);
}

namespace {

constexpr unsigned kMaxValueScale = 62;

void check_value_scale(unsigned n_max) {
  if (n_max > kMaxValueScale)
    throw RangeError("n_max " + std::to_string(n_max) + " exceeds the 64-bit range of stream elements");
}

CountProfile profile_value(const IntegerSet& set, unsigned n_max, std::uint64_t budget) {
  CountProfile p;
  p.norm_kind = NormKind::value;
  p.blocks.assign(n_max + 1, 0);
  p.cumulative.assign(n_max + 1, 0);
  if (set.has_exact_count()) {
    const auto& ec = set.exact_count();
    for (unsigned n = 0; n <= n_max; ++n) {
      const std::uint64_t lo = std::uint64_t{1} << n;
      p.blocks[n] = ec(lo, 2 * lo - 1);
      p.cumulative[n] = ec(1, lo);
    }
    return p;
  }
  if (set.has_level_count()) {
    Count running = 0;
    for (unsigned n = 0; n <= n_max; ++n) {
      p.blocks[n] = set.level_count()(n + 1);
      p.cumulative[n] = running + (set.contains(std::uint64_t{1} << n) ? 1 : 0);
      running += p.blocks[n];
    }
    return p;
  }
  std::vector<std::uint64_t> block(n_max + 1, 0), boundary(n_max + 1, 0);
  std::uint64_t seen = 0;
  const std::uint64_t hi = (std::uint64_t{1} << (n_max + 1)) - 1;
  set.enumerate(1, hi, [&](std::uint64_t x) {
    if (seen == budget) throw BudgetExceeded(Count(seen), budget);
    ++seen;
    const unsigned n = bit_length(x) - 1;
    ++block[n];
    if ((x & (x - 1)) == 0) ++boundary[n];
    return true;
  });
  Count running = 0;
  for (unsigned n = 0; n <= n_max; ++n) {
    p.blocks[n] = block[n];
    p.cumulative[n] = running + boundary[n];
    running += block[n];
  }
  return p;
}

CountProfile profile_binary_length(const IntegerSet& set, unsigned n_max, std::uint64_t budget) {
  CountProfile p;
  p.norm_kind = NormKind::binary_length;
  p.blocks.assign(n_max + 1, 0);
  p.cumulative.assign(n_max + 1, 0);
  if (set.has_level_count()) {
    for (unsigned k = 1; k <= n_max; ++k) p.blocks[k] = set.level_count()(k);
  } else {
    if (n_max > 63) throw RangeError("binary-length profile beyond 63 needs a level-count formula");
    if (set.has_exact_count()) {
      for (unsigned k = 1; k <= n_max; ++k) {
        const std::uint64_t lo = std::uint64_t{1} << (k - 1);
        p.blocks[k] = set.exact_count()(lo, lo + (lo - 1));
      }
    } else {
      std::vector<std::uint64_t> level(n_max + 1, 0);
      std::uint64_t seen = 0;
      const std::uint64_t hi = n_max == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_max) - 1;
      set.enumerate(1, hi, [&](std::uint64_t x) {
        if (seen == budget) throw BudgetExceeded(Count(seen), budget);
        ++seen;
        ++level[bit_length(x)];
        return true;
      });
      for (unsigned k = 0; k <= n_max; ++k) p.blocks[k] = level[k];
    }
  }
  Count running = 0;
  for (unsigned k = 0; k <= n_max; ++k) {
    running += p.blocks[k];
    p.cumulative[k] = running;
  }
  return p;
}

Wide pow4(unsigned n) { return Wide{1} << (2 * n); }

}  // namespace

CountProfile block_profile(const IntegerSet& set, NormKind kind, unsigned n_max, const ProfileOptions& options) {
  switch (kind) {
    case NormKind::value:
      check_value_scale(n_max);
      return profile_value(set, n_max, options.budget);
    case NormKind::binary_length:
      return profile_binary_length(set, n_max, options.budget);
    default:
      throw UsageError("norm kind '" + to_string(kind) + "' applies to lattice sets, not integer sets");
  }
}

CountProfile block_profile(const LatticePointSet& set, NormKind kind, unsigned n_max, const ProfileOptions& options) {
  if (kind != NormKind::euclidean && kind != NormKind::l1)
    throw UsageError("norm kind '" + to_string(kind) + "' applies to integer sets, not lattice sets");
  check_value_scale(n_max);
  const bool euclid = kind == NormKind::euclidean;
  const Wide reach = euclid ? pow4(n_max) : (Wide{1} << n_max);
  const Wide covered = euclid ? set.coverage().euclidean_sq : set.coverage().l1;
  if (reach > covered)
    throw RangeError("lattice set '" + set.name() + "' is not complete out to norm 2^" + std::to_string(n_max));

  CountProfile p;
  p.norm_kind = kind;
  p.ambient_dimension = set.dimension();
  p.blocks.assign(n_max + 1, 0);
  p.cumulative.assign(n_max + 1, 0);
  const Wide block_end = euclid ? pow4(n_max + 1) - 1 : (Wide{1} << (n_max + 1)) - 1;
  p.last_block_truncated = block_end > covered;

  if (set.has_norm_counter()) {
    const auto& nc = set.norm_counter();
    for (unsigned n = 0; n <= n_max; ++n) {
      const Wide lo = euclid ? pow4(n) : (Wide{1} << n);
      const Wide hi = euclid ? pow4(n + 1) : (Wide{1} << (n + 1));
      p.cumulative[n] = nc(kind, lo + 1);
      p.blocks[n] = nc(kind, hi) - nc(kind, lo);
    }
    return p;
  }

  std::vector<std::uint64_t> block(n_max + 1, 0), boundary(n_max + 1, 0);
  std::uint64_t seen = 0;
  const std::uint64_t budget = options.budget;
  set.enumerate([&](Coords pt) {
    if (seen == budget) throw BudgetExceeded(Count(seen), budget);
    ++seen;
    const Wide v = euclid ? norm_sq(pt) : norm_l1(pt);
    if (v == 0 || v > block_end) return true;
    unsigned bits = 0;
    for (Wide t = v; t != 0; t >>= 1) ++bits;
    const unsigned n = euclid ? (bits - 1) / 2 : bits - 1;
    ++block[n];
    if (v == (euclid ? pow4(n) : (Wide{1} << n))) ++boundary[n];
    return true;
  });
  Count running = 0;
  for (unsigned n = 0; n <= n_max; ++n) {
    p.blocks[n] = block[n];
    p.cumulative[n] = running + boundary[n];
    running += block[n];
  }
  return p;
}

CountProfile block_profile(const AnySet& set, NormKind kind, unsigned n_max, const ProfileOptions& options) {
  return std::visit([&](const auto& s) { return block_profile(s, kind, n_max, options); }, set);
}

ZetaSum zeta_partial(const IntegerSet& set, double s, std::uint64_t N, std::uint64_t budget) {
  if (s < 0) throw RangeError("zeta_partial: s must be nonnegative");
  if (N == 0) throw RangeError("zeta_partial: N must be at least 1");
  ZetaSum out;
  long double acc = 0;
  set.enumerate(1, N, [&](std::uint64_t x) {
    if (out.terms == budget) {
      out.truncated = true;
      return false;
    }
    acc += std::pow(static_cast<long double>(x), -static_cast<long double>(s));
    ++out.terms;
    return true;
  });
  out.value = static_cast<double>(acc);
  return out;
}

ZetaSum zeta_partial(const LatticePointSet& set, double s, std::uint64_t N, NormKind kind, std::uint64_t budget) {
  if (s < 0) throw RangeError("zeta_partial: s must be nonnegative");
  if (N == 0) throw RangeError("zeta_partial: N must be at least 1");
  if (kind != NormKind::euclidean && kind != NormKind::l1)
    throw UsageError("lattice zeta sums take the euclidean or l1 norm");
  const bool euclid = kind == NormKind::euclidean;
  const Wide limit = euclid ? static_cast<Wide>(N) * N : static_cast<Wide>(N);
  ZetaSum out;
  std::vector<Wide> norms;
  std::uint64_t seen = 0;
  set.enumerate([&](Coords pt) {
    if (seen == budget) {
      out.truncated = true;
      return false;
    }
    ++seen;
    const Wide v = euclid ? norm_sq(pt) : norm_l1(pt);
    if (v != 0 && v <= limit) norms.push_back(v);
    return true;
  });
  std::sort(norms.begin(), norms.end());
  long double acc = 0;
  for (Wide v : norms) {
    const long double r = static_cast<long double>(v);
    acc += euclid ? std::pow(r, -static_cast<long double>(s) / 2) : std::pow(r, -static_cast<long double>(s));
  }
  out.terms = norms.size();
  out.value = static_cast<double>(acc);
  return out;
}

// ---- file formats ----

namespace {

template <typename T>
bool parse_number(std::string_view text, T& out) {
  const char* b = text.data();
  const char* e = b + text.size();
  auto [ptr, ec] = std::from_chars(b, e, out);
  return ec == std::errc() && ptr == e;
}

}  // namespace

AnySet parse_set_stream(std::istream& in, const std::string& name) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  // a single trailing newline is fine; getline already swallowed it

  auto check_line = [](std::size_t no, const std::string& l) {
    if (!l.empty() && l.back() == '\r') throw ParseError(no, "CR line ending; LF expected");
    if (l.empty()) throw ParseError(no, "blank line");
  };

  if (!lines.empty() && lines[0].rfind("d=", 0) == 0) {
    unsigned d = 0;
    check_line(1, lines[0]);
    if (!parse_number(std::string_view(lines[0]).substr(2), d) || d == 0)
      throw ParseError(1, "bad dimension header '" + lines[0] + "'");
    std::vector<std::int64_t> coords;
    for (line_no = 2; line_no <= lines.size(); ++line_no) {
      const std::string& l = lines[line_no - 1];
      check_line(line_no, l);
      std::istringstream ss(l);
      std::string tok;
      unsigned arity = 0;
      while (ss >> tok) {
        std::int64_t v = 0;
        if (!parse_number(tok, v)) throw ParseError(line_no, "bad coordinate '" + tok + "'");
        coords.push_back(v);
        ++arity;
      }
      if (arity != d)
        throw ParseError(line_no, "point has " + std::to_string(arity) + " coordinates, expected " + std::to_string(d));
    }
    return LatticePointSet::from_points(name, d, std::move(coords));
  }

  std::vector<std::uint64_t> values;
  for (line_no = 1; line_no <= lines.size(); ++line_no) {
    const std::string& l = lines[line_no - 1];
    check_line(line_no, l);
    if (l[0] == '-') throw ParseError(line_no, "negative entry '" + l + "'");
    std::uint64_t v = 0;
    if (!parse_number(l, v)) throw ParseError(line_no, "not a decimal integer: '" + l + "'");
    if (v == 0) throw ParseError(line_no, "zero is not a positive integer");
    if (l[0] == '0') throw ParseError(line_no, "leading zero in '" + l + "'");
    if (!values.empty() && v <= values.back())
      throw ParseError(line_no, "non-monotone entry " + l + " after " + std::to_string(values.back()));
    values.push_back(v);
  }
  return IntegerSet::from_sorted(name, std::move(values));
}

void write_integer_set(std::ostream& out, const IntegerSet& set, std::uint64_t lo, std::uint64_t hi,
                       std::uint64_t budget) {
  std::uint64_t n = 0;
  set.enumerate(lo, hi, [&](std::uint64_t x) {
    if (n++ == budget) throw BudgetExceeded(Count(n - 1), budget);
    out << x << '\n';
    return true;
  });
}

void write_lattice_set(std::ostream& out, const LatticePointSet& set, std::uint64_t budget) {
  out << "d=" << set.dimension() << '\n';
  std::uint64_t n = 0;
  set.enumerate([&](Coords p) {
    if (n++ == budget) throw BudgetExceeded(Count(n - 1), budget);
    for (std::size_t i = 0; i < p.size(); ++i) out << (i ? " " : "") << p[i];
    out << '\n';
    return true;
  });
}

void write_profile_csv(std::ostream& out, const CountProfile& profile) {
  out << "n,block_count,cumulative_count\n";
  for (unsigned n = 0; n < profile.blocks.size(); ++n)
    out << n << ',' << profile.blocks[n] << ',' << profile.cumulative[n] << '\n';
}

}  // namespace zdim
