#include "zdim/gales.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "zdim/errors.hpp"
#include "zdim/estimators.hpp"

namespace zdim {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double lse(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log2(std::exp2(a - m) + std::exp2(b - m));
}

void check_depth(unsigned depth) {
  if (depth > Gale::kMaxDepth)
    throw DepthError("gale depth " + std::to_string(depth) + " exceeds the table limit of " +
                     std::to_string(Gale::kMaxDepth));
}

}  // namespace

Gale::Gale(double s, unsigned depth, std::vector<double> log2_values)
    : s_(s), depth_(depth), log2_(std::move(log2_values)) {
  check_depth(depth);
  if (log2_.size() != (std::size_t{2} << depth) - 1) throw ParameterError("gale table has the wrong size");
}

Gale Gale::constant(double s, unsigned depth, double value) {
  check_depth(depth);
  if (value < 0) throw ParameterError("gale values must be nonnegative");
  return Gale(s, depth, std::vector<double>((std::size_t{2} << depth) - 1, value == 0 ? kNegInf : std::log2(value)));
}

double Gale::log2_value(unsigned len, std::uint64_t bits) const {
  if (len > depth_) throw DepthError("string of length " + std::to_string(len) + " is deeper than the gale table");
  return log2_[index(len, bits)];
}

double Gale::value(unsigned len, std::uint64_t bits) const { return std::exp2(log2_value(len, bits)); }

double gale_deficiency(const Gale& g, GaleMode mode, unsigned max_len) {
  const unsigned top = std::min(g.depth(), max_len);
  const double shrink = std::exp2(-g.s());
  double worst = 0;
  for (unsigned len = 0; len < top; ++len) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      const double d = g.value(len, v);
      const double kids = shrink * (g.value(len + 1, 2 * v) + g.value(len + 1, 2 * v + 1));
      const double gap = mode == GaleMode::gale ? std::fabs(d - kids) : std::max(0.0, kids - d);
      worst = std::max(worst, gap / std::max(1.0, d));
    }
  }
  return worst;
}

double SupergaleConstruction::level_value(unsigned k, unsigned len, std::uint64_t bits) const {
  if (k == 0 || k >= level_counts.size() || level_counts[k] == 0) return 0.0;
  const double size = level_counts[k].convert_to<double>();
  const auto& mem = *members;
  auto in_level = [&](std::uint64_t v) { return (v >> (k - 1)) == 1 && mem[v]; };
  if (len > k) return in_level(bits >> (len - k)) ? std::exp2(static_cast<double>(k)) / size : 0.0;
  std::uint64_t ext = 0;
  const unsigned free = k - len;
  for (std::uint64_t u = bits << free; u < ((bits + 1) << free); ++u) ext += in_level(u) ? 1 : 0;
  return std::exp2(static_cast<double>(len)) * static_cast<double>(ext) / size;
}

SupergaleConstruction build_supergale(const IntegerSet& set, double s, unsigned depth, unsigned window) {
  check_depth(depth);
  if (depth < 1) throw DepthError("gale depth must be at least 1");
  SupergaleConstruction out;
  out.s = s;

  auto mem = std::make_shared<std::vector<char>>(std::size_t{1} << depth, 0);
  out.level_counts.assign(depth + 1, 0);
  std::vector<std::uint64_t> level(depth + 1, 0);
  set.enumerate(1, (std::uint64_t{1} << depth) - 1, [&](std::uint64_t x) {
    (*mem)[x] = 1;
    ++level[bit_length(x)];
    return true;
  });
  for (unsigned k = 0; k <= depth; ++k) out.level_counts[k] = level[k];
  out.members = mem;

  CountProfile prof;
  prof.norm_kind = NormKind::binary_length;
  prof.blocks = out.level_counts;
  prof.cumulative.assign(depth + 1, 0);
  Count run = 0;
  for (unsigned k = 0; k <= depth; ++k) prof.cumulative[k] = (run += prof.blocks[k]);
  const auto est = upper_dim_estimate(prof, std::min(window, depth));
  out.upper_estimate = est.upper;
  if (!(s > est.upper))
    throw InfeasibleError("supergale: s=" + std::to_string(s) + " does not exceed the estimated dimension " +
                          std::to_string(est.upper));
  out.epsilon = (s - est.upper) / 2;
  const double rate = s - out.epsilon;

  for (unsigned k = 1; k <= depth; ++k)
    if (level[k] > 0 && std::log2(static_cast<double>(level[k])) >= rate * k) out.n0 = k;
  for (unsigned k = 1; k <= out.n0; ++k)
    if (level[k] > 0) out.c0 = std::max(out.c0, std::exp2(std::log2(static_cast<double>(level[k])) - rate * k));
  // n^2 / 2^{eps n} peaks at n = 2 / (eps ln 2)
  const double peak = 2.0 / (out.epsilon * std::log(2.0));
  for (double n : {1.0, std::floor(peak), std::ceil(peak)})
    if (n >= 1) out.c1 = std::max(out.c1, n * n * std::exp2(-out.epsilon * n));

  // log2 of k^-2 / |A_k|; -inf for empty levels
  std::vector<double> weight(depth + 1, kNegInf);
  for (unsigned k = 1; k <= depth; ++k)
    if (level[k] > 0) weight[k] = -2.0 * std::log2(static_cast<double>(k)) - std::log2(static_cast<double>(level[k]));
  auto member = [&](unsigned len, std::uint64_t v) { return len >= 1 && (v >> (len - 1)) == 1 && (*mem)[v]; };

  // H(w) = sum_{k >= |w|} k^-2 ext_k(w) / |A_k|, bottom-up in the table
  std::vector<double> table((std::size_t{2} << depth) - 1, kNegInf);
  for (unsigned len = depth + 1; len-- > 0;) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      double h = member(len, v) ? weight[len] : kNegInf;
      if (len < depth) h = lse(h, lse(table[Gale::index(len + 1, 2 * v)], table[Gale::index(len + 1, 2 * v + 1)]));
      table[Gale::index(len, v)] = h;
    }
  }
  // S_low(w) = sum_{k < |w|} k^-2 2^k [w[0:k] in A_k] / |A_k|, top-down one level at a time
  const double base = std::log2(out.c0) + std::log2(out.c1);
  std::vector<double> low_prev{kNegInf}, low_cur;
  table[0] = base + table[0];
  for (unsigned len = 1; len <= depth; ++len) {
    low_cur.assign(std::size_t{1} << len, kNegInf);
    for (std::uint64_t v = 0; v < low_cur.size(); ++v) {
      const std::uint64_t parent = v >> 1;
      double lo = low_prev[parent];
      if (member(len - 1, parent)) lo = lse(lo, weight[len - 1] + (len - 1));
      low_cur[v] = lo;
      double& slot = table[Gale::index(len, v)];
      slot = base + (s - 1) * len + lse(lo, len + slot);
    }
    low_prev.swap(low_cur);
  }
  out.gale = Gale(s, depth, std::move(table));
  return out;
}

bool succeeds(const Gale& g, std::uint64_t n) {
  if (n == 0) throw RangeError("succeeds: n must be positive");
  const unsigned len = bit_length(n);
  if (len > g.depth())
    throw DepthError("succeeds: " + std::to_string(n) + " needs depth " + std::to_string(len) + " > " +
                     std::to_string(g.depth()));
  return g.log2_value(len, n) >= 0.0;
}

KraftResult kraft_check(const Gale& g, unsigned k) {
  if (k > g.depth()) throw DepthError("kraft_check: k exceeds the gale depth");
  KraftResult r;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << k); ++v)
    if (g.log2_value(k, v) >= 0.0) ++r.count;
  r.bound = std::exp2(g.s() * k + g.log2_value(0, 0));
  r.ok = static_cast<double>(r.count) <= r.bound * (1 + 1e-9);
  return r;
}

double kraft_required_log2_capital(const Count& level_count, double s, unsigned k) {
  if (level_count == 0) return kNegInf;
  return log2_count(level_count) - s * k;
}

void write_gale_csv(std::ostream& out, const Gale& g, unsigned dump_depth) {
  out << "w,log2_value\n";
  const unsigned top = std::min(dump_depth, g.depth());
  char buf[64];
  for (unsigned len = 0; len <= top; ++len) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      std::string w;
      for (unsigned i = len; i-- > 0;) w += ((v >> i) & 1) ? '1' : '0';
      const double lv = g.log2_value(len, v);
      if (lv == kNegInf) std::snprintf(buf, sizeof buf, "-inf");
      else std::snprintf(buf, sizeof buf, "%.9f", lv);
      out << (len == 0 ? "" : w) << ',' << buf << '\n';
    }
  }
}

}  // namespace zdim
