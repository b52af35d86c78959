#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "zdim/set_core.hpp"

namespace zdim {

inline constexpr unsigned kDefaultWindow = 8;

struct ScaleExponent {
  unsigned n = 0;
  double block_exponent = 0;       // log2(max(c_n, 1)) / n
  double cumulative_exponent = 0;  // log2(cum(n)) / n
};

struct DimensionEstimate {
  double upper = 0;
  double lower = 0;
  std::vector<ScaleExponent> per_scale;
  unsigned window_lo = 0, window_hi = 0;
  // least-squares slope of log2 cum(n) against n over the window
  double slope = 0;
  std::string method;
  bool empty_set = false;
  unsigned ambient_dimension = 1;
};

// Both functions fill upper and lower; they differ in the method tag.
DimensionEstimate upper_dim_estimate(const CountProfile& profile, unsigned window = kDefaultWindow);
DimensionEstimate lower_dim_estimate(const CountProfile& profile, unsigned window = kDefaultWindow);

void write_estimate_csv(std::ostream& out, const DimensionEstimate& est);
std::string summary_line(const DimensionEstimate& est);

// Two columns, n and the cumulative exponent, six decimals.
void write_plot_data(std::ostream& out, const CountProfile& profile);
void write_plot_data(std::ostream& out, const DimensionEstimate& est);

struct ProbeOptions {
  // per-doubling growth of the partial-sum increments at or above this counts as divergence
  double divergence_ratio = 0.99;
  std::uint64_t budget = default_budget();
};

enum class ProbeStatus { bracketed, converged_everywhere, diverged_everywhere, indeterminate };

std::string to_string(ProbeStatus status);

struct ProbePoint {
  double s = 0;
  std::vector<double> partial_sums;  // one per schedule entry
  double growth = 0;                 // per-doubling increment ratio near the top of the schedule
  bool divergent = false;
};

struct ProbeResult {
  double abscissa = 0;
  ProbeStatus status = ProbeStatus::indeterminate;
  bool heuristic = true;
  bool block_aggregated = false;
  std::vector<ProbePoint> diagnostics;
};

ProbeResult abscissa_probe(const IntegerSet& set, const std::vector<double>& s_grid,
                           const std::vector<std::uint64_t>& n_schedule, const ProbeOptions& options = {});

// 0, step, 2 step, ... up to hi inclusive
std::vector<double> linear_grid(double lo, double hi, double step);
// 2^lo, 2^(lo+1), ..., 2^hi
std::vector<std::uint64_t> dyadic_schedule(unsigned lo, unsigned hi);

}  // namespace zdim
