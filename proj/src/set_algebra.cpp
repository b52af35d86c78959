#include "zdim/set_algebra.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "zdim/errors.hpp"

namespace zdim {

namespace {

std::optional<std::uint64_t> first_element(const IntegerSet& s, std::uint64_t hi) {
  std::optional<std::uint64_t> out;
  s.enumerate(1, hi, [&](std::uint64_t x) {
    out = x;
    return false;
  });
  return out;
}

constexpr std::uint64_t kBitmapLimit = std::uint64_t{1} << 28;

}  // namespace

IntegerSet pointwise(const IntegerSet& a, const IntegerSet& b, PointwiseOp op, std::uint64_t bound,
                     std::uint64_t budget) {
  const char* sym = op == PointwiseOp::sum ? "+" : "*";
  const std::string name = "(" + a.name() + sym + b.name() + ")";
  const auto min_a = first_element(a, bound), min_b = first_element(b, bound);
  if (!min_a || !min_b) return IntegerSet::from_sorted(name, {});

  // only a <= bound - min(B) (sum) or a <= bound / min(B) (product) can contribute
  const std::uint64_t a_top = op == PointwiseOp::sum ? (bound >= *min_b ? bound - *min_b : 0) : bound / *min_b;
  const std::uint64_t b_top = op == PointwiseOp::sum ? (bound >= *min_a ? bound - *min_a : 0) : bound / *min_a;
  const auto as = a.elements(1, a_top, budget);
  const auto bs = b.elements(1, b_top, budget);

  std::uint64_t pairs = 0;
  std::vector<std::uint64_t> out;
  std::vector<bool> bitmap;
  const bool use_bitmap = bound < kBitmapLimit;
  if (use_bitmap) bitmap.assign(bound + 1, false);
  for (std::uint64_t x : as) {
    for (std::uint64_t y : bs) {
      const Wide v = op == PointwiseOp::sum ? Wide{x} + y : Wide{x} * y;
      if (v > bound) break;
      if (++pairs > budget) throw BudgetExceeded(Count(pairs - 1), budget);
      if (use_bitmap) bitmap[static_cast<std::size_t>(v)] = true;
      else out.push_back(static_cast<std::uint64_t>(v));
    }
  }
  if (use_bitmap) {
    for (std::uint64_t v = 1; v <= bound; ++v)
      if (bitmap[v]) out.push_back(v);
  } else {
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return IntegerSet::from_sorted(name, std::move(out));
}

LatticePointSet cartesian(const IntegerSet& a, const IntegerSet& b, std::uint64_t radius) {
  const Wide r2 = Wide{radius} * radius;
  Coverage cov{r2, Wide{radius}};
  LatticePointSet out(a.name() + "x" + b.name(), 2,
                      [a, b, radius, r2](const LatticePointSet::PointVisitor& visit) {
                        std::int64_t p[2];
                        bool stop = false;
                        a.enumerate(1, radius, [&](std::uint64_t x) {
                          const std::uint64_t ymax = isqrt_wide(r2 - Wide{x} * x);
                          b.enumerate(1, ymax, [&](std::uint64_t y) {
                            p[0] = static_cast<std::int64_t>(x);
                            p[1] = static_cast<std::int64_t>(y);
                            stop = !visit(Coords(p, 2));
                            return !stop;
                          });
                          return !stop;
                        });
                      },
                      cov);
  if (a.has_exact_count() && b.has_exact_count()) {
    out.with_norm_counter([a, b](NormKind kind, Wide bound) -> Count {
      if (bound <= 1) return 0;
      const bool euclid = kind == NormKind::euclidean;
      const Wide lim = bound - 1;  // largest admissible norm (squared for euclid)
      const std::uint64_t side = euclid ? isqrt_wide(lim) : static_cast<std::uint64_t>(
                                                                std::min<Wide>(lim, std::numeric_limits<std::uint64_t>::max()));
      // walk the sparser factor
      const bool walk_a = a.exact_count()(1, side) <= b.exact_count()(1, side);
      const IntegerSet& outer = walk_a ? a : b;
      const IntegerSet& inner = walk_a ? b : a;
      const std::uint64_t budget = default_budget();
      std::uint64_t seen = 0;
      Count total = 0;
      outer.enumerate(1, side, [&](std::uint64_t x) {
        if (++seen > budget) throw BudgetExceeded(total, budget);
        const Wide rest = euclid ? lim - Wide{x} * x : lim - x;
        const std::uint64_t y = euclid ? isqrt_wide(rest) : static_cast<std::uint64_t>(rest);
        if (y >= 1) total += inner.exact_count()(1, y);
        return true;
      });
      return total;
    });
  }
  return out;
}

IntegerSet affine(const IntegerSet& a, std::uint64_t k, AffineMode mode) {
  if (k == 0) throw ParameterError("affine: k must be positive");
  if (mode == AffineMode::translate) {
    IntegerSet out(std::to_string(k) + "+" + a.name(), [a, k](std::uint64_t lo, std::uint64_t hi, const IntegerSet::Visitor& v) {
      if (hi <= k) return;
      a.enumerate(lo > k ? lo - k : 1, hi - k, [&](std::uint64_t x) { return v(x + k); });
    });
    out.with_membership([a, k](std::uint64_t n) { return n > k && a.contains(n - k); });
    if (a.has_exact_count())
      out.with_exact_count([a, k](std::uint64_t lo, std::uint64_t hi) -> Count {
        if (hi <= k || lo > hi) return 0;
        return a.exact_count()(std::max(lo, k + 1) - k, hi - k);
      });
    return out;
  }
  IntegerSet out(std::to_string(k) + "*" + a.name(), [a, k](std::uint64_t lo, std::uint64_t hi, const IntegerSet::Visitor& v) {
    const std::uint64_t from = (lo + k - 1) / k, to = hi / k;
    if (from > to) return;
    a.enumerate(from, to, [&](std::uint64_t x) { return v(x * k); });
  });
  out.with_membership([a, k](std::uint64_t n) { return n % k == 0 && a.contains(n / k); });
  if (a.has_exact_count())
    out.with_exact_count([a, k](std::uint64_t lo, std::uint64_t hi) -> Count {
      const std::uint64_t from = std::max<std::uint64_t>(1, (lo + k - 1) / k), to = hi / k;
      if (from > to) return 0;
      return a.exact_count()(from, to);
    });
  return out;
}

IntegerSet unite(const IntegerSet& a, const IntegerSet& b) {
  IntegerSet out("(" + a.name() + "|" + b.name() + ")", [a, b](std::uint64_t lo, std::uint64_t hi, const IntegerSet::Visitor& v) {
    constexpr std::size_t kChunk = 4096;
    // pull fixed-size chunks from each stream and merge them
    struct Cursor {
      const IntegerSet& s;
      std::uint64_t next;
      bool done = false;
      std::vector<std::uint64_t> buf;
      std::size_t pos = 0;
      bool refill(std::uint64_t hi) {
        buf.clear();
        pos = 0;
        if (done) return false;
        s.enumerate(next, hi, [&](std::uint64_t x) {
          buf.push_back(x);
          return buf.size() < kChunk;
        });
        if (buf.size() < kChunk || buf.back() == hi) done = true;
        else next = buf.back() + 1;
        return !buf.empty();
      }
      bool peek(std::uint64_t hi, std::uint64_t& x) {
        if (pos == buf.size() && !refill(hi)) return false;
        x = buf[pos];
        return true;
      }
    };
    Cursor ca{a, lo, false, {}, 0}, cb{b, lo, false, {}, 0};
    for (;;) {
      std::uint64_t x = 0, y = 0;
      const bool ha = ca.peek(hi, x), hb = cb.peek(hi, y);
      if (!ha && !hb) return;
      std::uint64_t z;
      if (ha && (!hb || x <= y)) {
        z = x;
        ++ca.pos;
        if (hb && y == x) ++cb.pos;
      } else {
        z = y;
        ++cb.pos;
      }
      if (!v(z)) return;
    }
  });
  if (a.has_membership() && b.has_membership())
    out.with_membership([a, b](std::uint64_t n) { return a.contains(n) || b.contains(n); });
  return out;
}

// ---- components ----

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void join(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    if (rank_[x] < rank_[y]) std::swap(x, y);
    parent_[y] = x;
    if (rank_[x] == rank_[y]) ++rank_[x];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned char> rank_;
};

struct KeyHash {
  std::size_t operator()(const std::vector<std::int64_t>& k) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : k) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ull;
    return h;
  }
};

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::vector<Component> components_of(unsigned d, const std::vector<std::int64_t>& flat, std::uint64_t r) {
  if (r == 0) throw ParameterError("components: r must be positive");
  const std::size_t n = flat.size() / d;
  const auto side = static_cast<std::int64_t>(r);
  const Wide r2 = Wide{r} * r;
  std::unordered_map<std::vector<std::int64_t>, std::vector<std::size_t>, KeyHash> grid;
  std::vector<std::int64_t> key(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (unsigned t = 0; t < d; ++t) key[t] = floor_div(flat[i * d + t], side);
    grid[key].push_back(i);
  }
  UnionFind uf(n);
  std::vector<std::int64_t> diff(d), nb(d);
  std::size_t offsets = 1;
  for (unsigned t = 0; t < d; ++t) offsets *= 3;
  for (const auto& [cell, members] : grid) {
    for (std::size_t o = 0; o < offsets; ++o) {
      std::size_t rest = o;
      for (unsigned t = 0; t < d; ++t) {
        nb[t] = cell[t] + static_cast<std::int64_t>(rest % 3) - 1;
        rest /= 3;
      }
      auto it = grid.find(nb);
      if (it == grid.end()) continue;
      for (std::size_t i : members)
        for (std::size_t j : it->second) {
          if (j <= i) continue;
          for (unsigned t = 0; t < d; ++t) diff[t] = flat[i * d + t] - flat[j * d + t];
          if (norm_sq(Coords(diff.data(), d)) <= r2) uf.join(i, j);
        }
    }
  }
  std::map<std::size_t, Component> by_root;
  auto point = [&](std::size_t i) { return std::vector<std::int64_t>(flat.begin() + i * d, flat.begin() + (i + 1) * d); };
  for (std::size_t i = 0; i < n; ++i) {
    auto& c = by_root[uf.find(i)];
    auto p = point(i);
    if (c.size == 0 || p < c.min_element) c.min_element = p;
    if (c.size == 0 || p > c.max_element) c.max_element = p;
    ++c.size;
  }
  std::vector<Component> out;
  for (auto& [root, c] : by_root) out.push_back(std::move(c));
  std::sort(out.begin(), out.end(), [](const Component& x, const Component& y) { return x.min_element < y.min_element; });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = i;
  return out;
}

}  // namespace

std::vector<Component> bounded_components(const std::vector<std::uint64_t>& elements, std::uint64_t r) {
  std::vector<std::int64_t> flat(elements.begin(), elements.end());
  return components_of(1, flat, r);
}

std::vector<Component> bounded_components(const LatticePointSet& points, std::uint64_t r, std::uint64_t budget) {
  return components_of(points.dimension(), points.points(budget), r);
}

void write_components_csv(std::ostream& out, const std::vector<Component>& comps) {
  auto fmt = [](const std::vector<std::int64_t>& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + std::to_string(p[i]);
    return s;
  };
  out << "component_id,size,min_element,max_element\n";
  for (const auto& c : comps) out << c.id << ',' << c.size << ',' << fmt(c.min_element) << ',' << fmt(c.max_element) << '\n';
}

}  // namespace zdim
