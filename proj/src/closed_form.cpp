#include "zdim/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>

#include "zdim/errors.hpp"

namespace zdim {

std::vector<std::string> validate_code(const InstantaneousCodeSpec& spec) {
  std::vector<std::string> v;
  if (spec.k < 2 || spec.k > 36) v.push_back("base k=" + std::to_string(spec.k) + " outside [2, 36]");
  if (spec.delta.empty()) v.push_back("delta is empty");
  for (unsigned d : spec.delta) {
    if (d == 0) v.push_back("delta contains 0");
    else if (d >= spec.k) v.push_back("delta digit " + std::to_string(d) + " is not below k");
  }
  if (spec.words.empty()) v.push_back("B is empty");
  for (const auto& w : spec.words) {
    if (w.empty()) {
      v.push_back("B contains the empty string");
      continue;
    }
    for (char c : w) {
      const int d = digit_value(c);
      if (d < 0 || static_cast<unsigned>(d) >= spec.k) {
        v.push_back("word '" + w + "' uses a symbol outside the base-" + std::to_string(spec.k) + " alphabet");
        break;
      }
    }
  }
  std::vector<std::string> sorted;
  for (const auto& w : spec.words)
    if (!w.empty()) sorted.push_back(w);
  std::sort(sorted.begin(), sorted.end());
  // a prefix sorts immediately before everything it prefixes
  for (std::size_t i = 0; i < sorted.size(); ++i)
    for (std::size_t j = i + 1; j < sorted.size() && sorted[j].compare(0, sorted[i].size(), sorted[i]) == 0; ++j)
      v.push_back("'" + sorted[i] + "' is a prefix of '" + sorted[j] + "'");
  return v;
}

double code_beta(const InstantaneousCodeSpec& spec, double s) {
  const double lk = std::log(static_cast<double>(spec.k));
  double acc = 0;
  for (const auto& w : spec.words) acc += std::exp(-s * static_cast<double>(w.size()) * lk);
  return acc;
}

CodeDimensionResult code_dimension(const InstantaneousCodeSpec& spec) {
  auto violations = validate_code(spec);
  if (!violations.empty()) throw CodeError(std::move(violations));
  CodeDimensionResult r;
  r.lo = 0;
  r.hi = 1.0 + std::log(static_cast<double>(spec.words.size())) / std::log(static_cast<double>(spec.k));
  if (spec.words.size() == 1) {
    r.s_star = 0;
    r.beta_at_s_star = 1;
    return r;
  }
  double lo = r.lo, hi = r.hi, mid = lo, beta = code_beta(spec, lo);
  while (r.iterations < 200) {
    ++r.iterations;
    mid = 0.5 * (lo + hi);
    beta = code_beta(spec, mid);
    if (beta > 1) lo = mid;
    else hi = mid;
    if (std::fabs(beta - 1) <= 1e-12 || !(lo < hi)) break;
  }
  r.s_star = mid;
  r.beta_at_s_star = beta;
  r.lo = lo;
  r.hi = hi;
  return r;
}

double digit_dimension(unsigned k, const std::vector<unsigned>& allowed) {
  if (k < 2) throw ParameterError("digit dimension: base must be at least 2");
  std::set<unsigned> uniq;
  for (unsigned d : allowed) {
    if (d >= k) throw ParameterError("digit " + std::to_string(d) + " is not a base-" + std::to_string(k) + " digit");
    uniq.insert(d);
  }
  if (uniq.empty() || *uniq.rbegin() == 0) throw ParameterError("digit set: allowed digits must include a nonzero digit");
  return std::log(static_cast<double>(uniq.size())) / std::log(static_cast<double>(k));
}

double substitution_dimension(const SubstitutionRule& rule) {
  validate_rule(rule);
  return std::log(static_cast<double>(rule.survivors())) / std::log(static_cast<double>(rule.c));
}

unsigned lattice_subspace_dimension(unsigned d, const std::vector<std::int64_t>& vectors) {
  if (d == 0 || vectors.size() % d != 0) throw ParameterError("rank: vector list does not match the dimension");
  const std::size_t m = vectors.size() / d;
  std::vector<std::vector<Count>> a(m, std::vector<Count>(d));
  for (std::size_t i = 0; i < m; ++i)
    for (unsigned j = 0; j < d; ++j) a[i][j] = vectors[i * d + j];
  // Bareiss fraction-free elimination
  Count prev = 1;
  unsigned rank = 0;
  for (unsigned col = 0; col < d && rank < m; ++col) {
    std::size_t p = rank;
    while (p < m && a[p][col] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t i = rank + 1; i < m; ++i) {
      for (unsigned j = col + 1; j < d; ++j) a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) / prev;
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

}  // namespace

void write_closed_form_csv(std::ostream& out, const std::vector<ClosedFormRow>& rows) {
  out << "family,params,closed_form,estimated,abs_error\n";
  for (const auto& r : rows)
    out << csv_field(r.family) << ',' << csv_field(r.params) << ',' << fixed6(r.closed_form) << ','
        << fixed6(r.estimated) << ',' << fixed6(std::fabs(r.estimated - r.closed_form)) << '\n';
}

}  // namespace zdim
