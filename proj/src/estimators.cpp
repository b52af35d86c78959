#include "zdim/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "zdim/errors.hpp"

namespace zdim {

namespace {

DimensionEstimate estimate(const CountProfile& p, unsigned window, const char* method) {
  const unsigned n_max = p.n_max();
  if (p.blocks.empty() || p.cumulative.size() != p.blocks.size())
    throw UsageError("estimate: malformed profile");
  if (window < 1 || window > n_max)
    throw UsageError("estimate: window " + std::to_string(window) + " must lie in [1, n_max=" +
                     std::to_string(n_max) + "]");
  DimensionEstimate e;
  e.method = method;
  e.ambient_dimension = p.ambient_dimension;
  e.window_lo = n_max - window + 1;
  e.window_hi = n_max;
  e.per_scale.reserve(n_max + 1);
  for (unsigned n = 0; n <= n_max; ++n) {
    ScaleExponent s;
    s.n = n;
    if (n > 0) {
      const double c = p.blocks[n] > 0 ? log2_count(p.blocks[n]) : 0.0;
      const double u = p.cumulative[n] > 0 ? log2_count(p.cumulative[n]) : 0.0;
      s.block_exponent = c / n;
      s.cumulative_exponent = u / n;
    }
    e.per_scale.push_back(s);
  }
  if (p.all_zero()) {
    e.empty_set = true;
    return e;
  }
  double hi = -std::numeric_limits<double>::infinity(), lo = std::numeric_limits<double>::infinity();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  unsigned pts = 0;
  for (unsigned n = e.window_lo; n <= e.window_hi; ++n) {
    const double u = e.per_scale[n].cumulative_exponent;
    hi = std::max(hi, u);
    lo = std::min(lo, u);
    if (p.cumulative[n] > 0) {
      const double y = log2_count(p.cumulative[n]);
      sx += n;
      sy += y;
      sxx += static_cast<double>(n) * n;
      sxy += n * y;
      ++pts;
    }
  }
  const double d = static_cast<double>(p.ambient_dimension);
  e.upper = std::clamp(hi, 0.0, d);
  e.lower = std::clamp(lo, 0.0, d);
  const double denom = pts * sxx - sx * sx;
  e.slope = pts >= 2 && denom != 0 ? (pts * sxy - sx * sy) / denom : e.upper;
  return e;
}

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

}  // namespace

DimensionEstimate upper_dim_estimate(const CountProfile& profile, unsigned window) {
  return estimate(profile, window, "cumulative-tail-max");
}

DimensionEstimate lower_dim_estimate(const CountProfile& profile, unsigned window) {
  return estimate(profile, window, "cumulative-tail-min");
}

std::string summary_line(const DimensionEstimate& e) {
  return "upper=" + fixed6(e.upper) + ",lower=" + fixed6(e.lower) + ",slope=" + fixed6(e.slope) +
         ",window=" + std::to_string(e.window_lo) + "-" + std::to_string(e.window_hi) + ",method=" + e.method +
         (e.empty_set ? ",empty_set=1" : "");
}

void write_estimate_csv(std::ostream& out, const DimensionEstimate& e) {
  out << "n,block_exponent,cumulative_exponent\n";
  for (const auto& s : e.per_scale)
    out << s.n << ',' << fixed6(s.block_exponent) << ',' << fixed6(s.cumulative_exponent) << '\n';
  out << summary_line(e) << '\n';
}

void write_plot_data(std::ostream& out, const CountProfile& profile) {
  out << "n,exponent\n";
  if (profile.all_zero()) return;
  for (unsigned n = 0; n < profile.cumulative.size(); ++n) {
    const double u = n > 0 && profile.cumulative[n] > 0 ? log2_count(profile.cumulative[n]) / n : 0.0;
    out << n << ',' << fixed6(u) << '\n';
  }
}

void write_plot_data(std::ostream& out, const DimensionEstimate& est) {
  out << "n,exponent\n";
  if (est.empty_set) return;
  for (const auto& s : est.per_scale) out << s.n << ',' << fixed6(s.cumulative_exponent) << '\n';
}

std::string to_string(ProbeStatus status) {
  switch (status) {
    case ProbeStatus::bracketed: return "bracketed";
    case ProbeStatus::converged_everywhere: return "converged-everywhere";
    case ProbeStatus::diverged_everywhere: return "diverged-everywhere";
    case ProbeStatus::indeterminate: return "indeterminate";
  }
  return "?";
}

std::vector<double> linear_grid(double lo, double hi, double step) {
  if (!(step > 0) || hi < lo) throw UsageError("grid: need step > 0 and hi >= lo");
  std::vector<double> g;
  for (long i = 0;; ++i) {
    const double s = lo + static_cast<double>(i) * step;
    if (s > hi + 1e-12) break;
    g.push_back(s);
  }
  return g;
}

std::vector<std::uint64_t> dyadic_schedule(unsigned lo, unsigned hi) {
  if (hi > 63 || lo > hi) throw UsageError("schedule: need lo <= hi <= 63");
  std::vector<std::uint64_t> s;
  for (unsigned n = lo; n <= hi; ++n) s.push_back(std::uint64_t{1} << n);
  return s;
}

ProbeResult abscissa_probe(const IntegerSet& set, const std::vector<double>& s_grid,
                           const std::vector<std::uint64_t>& schedule, const ProbeOptions& options) {
  if (s_grid.empty() || schedule.empty()) throw UsageError("abscissa_probe: grids must be nonempty");
  if (!std::is_sorted(s_grid.begin(), s_grid.end()) || !std::is_sorted(schedule.begin(), schedule.end()))
    throw UsageError("abscissa_probe: grids must be ascending");
  if (s_grid.front() < 0 || schedule.front() == 0) throw UsageError("abscissa_probe: need s >= 0 and N >= 1");

  ProbeResult r;
  const std::size_t G = s_grid.size(), J = schedule.size();
  std::vector<std::vector<long double>> sums(G, std::vector<long double>(J, 0));
  const std::uint64_t N_top = schedule.back();

  if (set.has_exact_count()) {
    // dyadic block aggregate: sum over complete blocks [2^n, 2^{n+1}) of c_n 2^{-s n}
    r.block_aggregated = true;
    for (unsigned n = 0; n < 63; ++n) {
      const std::uint64_t lo = std::uint64_t{1} << n, hi = 2 * lo - 1;
      if (hi > N_top) break;
      const long double c = set.exact_count()(lo, hi).convert_to<long double>();
      if (c == 0) continue;
      for (std::size_t g = 0; g < G; ++g) {
        const long double term = c * std::exp2(-static_cast<long double>(s_grid[g]) * n);
        for (std::size_t j = 0; j < J; ++j)
          if (hi <= schedule[j]) sums[g][j] += term;
      }
    }
  } else {
    std::vector<long double> acc(G, 0);
    std::size_t j = 0;
    std::uint64_t seen = 0;
    auto flush_until = [&](std::uint64_t x) {
      while (j < J && schedule[j] < x) {
        for (std::size_t g = 0; g < G; ++g) sums[g][j] = acc[g];
        ++j;
      }
    };
    set.enumerate(1, N_top, [&](std::uint64_t x) {
      if (seen == options.budget) throw BudgetExceeded(Count(seen), options.budget);
      ++seen;
      flush_until(x);
      const long double lx = std::log2(static_cast<long double>(x));
      for (std::size_t g = 0; g < G; ++g) acc[g] += std::exp2(-static_cast<long double>(s_grid[g]) * lx);
      return true;
    });
    flush_until(std::numeric_limits<std::uint64_t>::max());
  }

  for (std::size_t g = 0; g < G; ++g) {
    ProbePoint pt;
    pt.s = s_grid[g];
    for (auto v : sums[g]) pt.partial_sums.push_back(static_cast<double>(v));
    // mean log-ratio of successive increments, per doubling, over the top of the schedule
    double log_ratio = 0;
    int used = 0;
    bool stalled = true, jumped = false;
    for (std::size_t j = J >= 4 ? J - 3 : 1; j + 1 < J; ++j) {
      const long double prev = sums[g][j] - (j > 0 ? sums[g][j - 1] : 0.0L);
      const long double next = sums[g][j + 1] - sums[g][j];
      const double doublings = std::log2(static_cast<double>(schedule[j + 1]) / static_cast<double>(schedule[j]));
      if (next > 0) stalled = false;
      if (prev <= 0 || doublings <= 0) {
        if (next > 0) jumped = true;
        continue;
      }
      if (next <= 0) {
        log_ratio += -std::numeric_limits<double>::infinity();
        ++used;
        continue;
      }
      log_ratio += static_cast<double>(std::log2(next / prev)) / doublings;
      ++used;
    }
    if (used > 0) pt.growth = std::exp2(log_ratio / used);
    else pt.growth = jumped ? std::numeric_limits<double>::infinity() : 0.0;
    if (stalled) pt.growth = 0.0;
    pt.divergent = pt.growth >= options.divergence_ratio;
    r.diagnostics.push_back(std::move(pt));
  }

  std::size_t n_div = 0;
  while (n_div < G && r.diagnostics[n_div].divergent) ++n_div;
  const bool monotone = std::none_of(r.diagnostics.begin() + static_cast<long>(n_div), r.diagnostics.end(),
                                     [](const ProbePoint& p) { return p.divergent; });
  if (n_div == 0 && monotone) {
    r.status = ProbeStatus::converged_everywhere;
    r.abscissa = s_grid.front();
  } else if (n_div == G) {
    r.status = ProbeStatus::diverged_everywhere;
    r.abscissa = s_grid.back();
  } else if (monotone) {
    r.status = ProbeStatus::bracketed;
    r.abscissa = 0.5 * (s_grid[n_div - 1] + s_grid[n_div]);
  } else {
    r.status = ProbeStatus::indeterminate;
    std::size_t last_div = 0;
    for (std::size_t g = 0; g < G; ++g)
      if (r.diagnostics[g].divergent) last_div = g;
    r.abscissa = last_div + 1 < G ? 0.5 * (s_grid[last_div] + s_grid[last_div + 1]) : s_grid.back();
  }
  return r;
}

}  // namespace zdim
