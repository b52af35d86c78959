#include <cmath>
#include <limits>

#include <gmp.h>
#include <mpfr.h>

#include "zdim/errors.hpp"
#include "zdim/generators.hpp"

namespace zdim {

namespace {

// RAII wrapper around an MPFR value.
class Real {
 public:
  explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Real() { mpfr_clear(v_); }
  Real(const Real&) = delete;
  Real& operator=(const Real&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

mpfr_prec_t precision_for(double x, std::uint64_t t) {
  return static_cast<mpfr_prec_t>(std::ceil(std::fabs(x) * static_cast<double>(t))) + 128;
}

// 2^{x t} correctly rounded at enough precision that ceil/floor are exact.
void exp2_scaled(Real& out, double x, std::uint64_t t) {
  Real e(192);
  mpfr_set_d(e.get(), x, MPFR_RNDN);
  mpfr_mul_ui(e.get(), e.get(), t, MPFR_RNDN);  // 53 x 64 bits: exact at 192
  mpfr_exp2(out.get(), e.get(), MPFR_RNDN);
}

Count pow2_ceil(double x, std::uint64_t t) {
  Real v(precision_for(x, t));
  exp2_scaled(v, x, t);
  Count out;
  mpfr_get_z(out.backend().data(), v.get(), MPFR_RNDU);
  return out;
}

Count pow2_floor(double x, std::uint64_t t) {
  Real v(precision_for(x, t));
  exp2_scaled(v, x, t);
  Count out;
  mpfr_get_z(out.backend().data(), v.get(), MPFR_RNDD);
  return out;
}

Count pow2(std::uint64_t e) { return Count(1) << static_cast<unsigned>(e); }

Count ceil_div(const Count& a, const Count& b) { return (a + b - 1) / b; }

Count min_count(const Count& a, const Count& b) { return a < b ? a : b; }

}  // namespace

std::uint64_t tower(unsigned n) {
  if (n < 1 || n > 5) throw RangeError("tower: T(n) fits in 64 bits only for 1 <= n <= 5");
  std::uint64_t t = 1;
  for (unsigned i = 1; i < n; ++i) t = std::uint64_t{1} << t;
  return t;
}

bool is_tower_value(std::uint64_t t) {
  for (unsigned n = 1; n <= 5; ++n)
    if (tower(n) == t) return true;
  return false;
}

namespace {

struct Levels {
  Count a;       // |A1_=t| for the construction's smaller exponent
  Count b1;      // B1 run length
  Count f;       // B2 stride floor(2^{lo t})
  Count q;       // B2 terms kept at bit-length t
  Count b_total;
};

Levels compute_levels(double lo, double hi, double gamma, std::uint64_t t) {
  Levels L;
  if (!is_tower_value(t)) {
    L.a = L.b1 = L.f = L.q = L.b_total = 0;
    return L;
  }
  const Count half = pow2(t - 1);
  L.a = min_count(half, pow2_ceil(lo, t));
  L.b1 = min_count(half, pow2_ceil(hi, t));
  L.f = pow2_floor(lo, t);
  L.q = min_count(pow2_ceil(gamma - lo, t), ceil_div(half, L.f));
  // B2 offsets j*f that fall outside the B1 run
  const Count inside = min_count(L.q, ceil_div(L.b1, L.f));
  L.b_total = L.b1 + (L.q - inside);
  return L;
}

}  // namespace

Count TowerPair::a_level(std::uint64_t t) const {
  const Levels L = compute_levels(lo_, hi_, spec_.gamma, t);
  return swapped_ ? L.b_total : L.a;
}

Count TowerPair::b_level(std::uint64_t t) const {
  const Levels L = compute_levels(lo_, hi_, spec_.gamma, t);
  return swapped_ ? L.a : L.b_total;
}

TowerCounts TowerPair::analytic_counts(std::uint64_t t) const {
  TowerCounts out;
  out.t = t;
  const Levels L = compute_levels(lo_, hi_, spec_.gamma, t);
  out.a = swapped_ ? L.b_total : L.a;
  out.b = swapped_ ? L.a : L.b_total;
  if (L.a == 0) {
    out.c_next = 0;
  } else if (L.a >= L.f) {
    // consecutive B2 translates of the A run overlap, so the sum set is one run
    const Count run_b1 = L.a + L.b1 - 1;
    const Count run_b2 = (L.q - 1) * L.f + L.a;
    out.c_next = run_b1 > run_b2 ? run_b1 : run_b2;
  } else {
    // small t only: A run shorter than the stride; merge intervals directly
    const auto a = L.a.convert_to<std::uint64_t>();
    const auto f = L.f.convert_to<std::uint64_t>();
    const auto q = L.q.convert_to<std::uint64_t>();
    std::uint64_t covered_to = a + L.b1.convert_to<std::uint64_t>() - 1;  // [0, covered_to)
    std::uint64_t total = covered_to;
    for (std::uint64_t j = 0; j < q; ++j) {
      const std::uint64_t s = j * f, e = s + a;
      if (e <= covered_to) continue;
      total += e - std::max(s, covered_to);
      covered_to = e;
    }
    out.c_next = total;
  }

  const double lo = lo_;
  const double g = spec_.gamma;
  const double td = static_cast<double>(t);
  // log2(2^{g t} - 2^{(g - lo) t}) = g t + log2(1 - 2^{-lo t})
  out.log2_upper = g * td + 1.0;
  out.log2_lower = lo * td > 0 ? g * td + std::log2(-std::expm1(-lo * td * std::log(2.0)))
                               : -std::numeric_limits<double>::infinity();
  if (out.c_next > 0) {
    Real upper(precision_for(g, t) + 8), lower(precision_for(g, t) + 8), tmp(precision_for(g, t) + 8);
    exp2_scaled(upper, g, t);
    exp2_scaled(tmp, g - lo, t);
    mpfr_sub(lower.get(), upper.get(), tmp.get(), MPFR_RNDN);
    mpfr_mul_2ui(upper.get(), upper.get(), 1, MPFR_RNDN);
    out.within_bounds = mpfr_cmp_z(lower.get(), out.c_next.backend().data()) <= 0 &&
                        mpfr_cmp_z(upper.get(), out.c_next.backend().data()) >= 0;
    out.entropy_ratio = log2_count(out.c_next) / (td + 1.0);
  }
  return out;
}

namespace {

std::uint64_t to_u64(const Count& c) { return c.convert_to<std::uint64_t>(); }

}  // namespace

TowerPair::TowerPair(TowerPairSpec spec) : spec_(spec) {
  const double a = spec.alpha, b = spec.beta, g = spec.gamma;
  auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0 && std::isfinite(x); };
  if (!in_unit(a) || !in_unit(b) || !in_unit(g)) throw ParameterError("tower: alpha, beta, gamma must lie in [0, 1]");
  if (a == b) throw ParameterError("tower: alpha == beta has no construction");
  lo_ = std::min(a, b);
  hi_ = std::max(a, b);
  swapped_ = a > b;
  if (!(hi_ <= g && g <= std::min(1.0, a + b)))
    throw ParameterError("tower: need max(alpha, beta) <= gamma <= min(1, alpha + beta)");

  // closures own copies of the exponents so the sets outlive this object
  auto lv = [lo = lo_, hi = hi_, g](std::uint64_t t) { return compute_levels(lo, hi, g, t); };

  auto small_a = [lv](std::uint64_t lo, std::uint64_t hi, const IntegerSet::Visitor& v) {
    for (unsigned n = 1; n <= 4; ++n) {
      const std::uint64_t t = tower(n);
      const std::uint64_t base = std::uint64_t{1} << (t - 1);
      const std::uint64_t len = to_u64(lv(t).a);
      for (std::uint64_t o = 0; o < len; ++o) {
        const std::uint64_t x = base + o;
        if (x > hi) return;
        if (x >= lo && !v(x)) return;
      }
    }
  };
  auto small_b = [lv](std::uint64_t lo, std::uint64_t hi, const IntegerSet::Visitor& v) {
    for (unsigned n = 1; n <= 4; ++n) {
      const std::uint64_t t = tower(n);
      const std::uint64_t base = std::uint64_t{1} << (t - 1);
      const auto L = lv(t);
      const std::uint64_t b1 = to_u64(L.b1), f = to_u64(L.f), q = to_u64(L.q);
      for (std::uint64_t o = 0; o < b1; ++o) {
        const std::uint64_t x = base + o;
        if (x > hi) return;
        if (x >= lo && !v(x)) return;
      }
      for (std::uint64_t j = (b1 + f - 1) / f; j < q; ++j) {
        const std::uint64_t x = base + j * f;
        if (x > hi) return;
        if (x >= lo && !v(x)) return;
      }
    }
  };
  auto member_a = [lv](std::uint64_t x) {
    const std::uint64_t t = bit_length(x);
    if (!is_tower_value(t)) return false;
    return Count(x - (std::uint64_t{1} << (t - 1))) < lv(t).a;
  };
  auto member_b = [lv](std::uint64_t x) {
    const std::uint64_t t = bit_length(x);
    if (!is_tower_value(t)) return false;
    const auto L = lv(t);
    const Count o = x - (std::uint64_t{1} << (t - 1));
    return o < L.b1 || (o % L.f == 0 && o / L.f < L.q);
  };

  IntegerSet setA("tower-A", small_a), setB("tower-B", small_b);
  setA.with_membership(member_a).with_level_count([lv](std::uint64_t t) { return lv(t).a; });
  setB.with_membership(member_b).with_level_count([lv](std::uint64_t t) { return lv(t).b_total; });
  // elements only exist up to bit-length 16 in 64-bit range; counts go further
  if (swapped_) {
    a_ = std::move(setB);
    b_ = std::move(setA);
  } else {
    a_ = std::move(setA);
    b_ = std::move(setB);
  }
}

TowerPair gen_tower_pair(const TowerPairSpec& spec) { return TowerPair(spec); }

}  // namespace zdim
