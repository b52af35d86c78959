#include "zdim/spec_string.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "zdim/errors.hpp"
#include "zdim/set_algebra.hpp"

namespace zdim {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

template <typename T>
T number(const std::string& key, const std::string& text) {
  T v{};
  const char* b = text.data();
  const char* e = b + text.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e || text.empty())
    throw UsageError("spec parameter " + key + "='" + text + "' is not a valid number");
  return v;
}

const std::string& need(const std::map<std::string, std::string>& p, const std::string& key, const std::string& what) {
  auto it = p.find(key);
  if (it == p.end()) throw UsageError(what + " spec needs " + key + "=...");
  return it->second;
}

void only(const std::map<std::string, std::string>& p, std::initializer_list<const char*> keys, const std::string& what) {
  for (const auto& [k, v] : p) {
    bool known = false;
    for (const char* key : keys) known = known || k == key;
    if (!known) throw UsageError(what + " spec has unknown parameter '" + k + "'");
  }
}

std::vector<unsigned> digit_list(const std::string& key, const std::string& text, unsigned k) {
  std::vector<unsigned> out;
  for (char c : text) {
    const int d = digit_value(c);
    if (d < 0 || static_cast<unsigned>(d) >= k)
      throw UsageError("spec parameter " + key + ": '" + std::string(1, c) + "' is not a base-" + std::to_string(k) + " digit");
    out.push_back(static_cast<unsigned>(d));
  }
  return out;
}

}  // namespace

std::map<std::string, std::string> parse_params(const std::string& body) {
  std::map<std::string, std::string> out;
  if (body.empty()) return out;
  for (const auto& part : split(body, ',')) {
    const auto eq = part.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("malformed spec parameter '" + part + "'");
    out[part.substr(0, eq)] = part.substr(eq + 1);
  }
  return out;
}

InstantaneousCodeSpec parse_code_body(const std::string& body) {
  const auto p = parse_params(body);
  only(p, {"k", "delta", "B"}, "code");
  InstantaneousCodeSpec spec;
  spec.k = number<unsigned>("k", need(p, "k", "code"));
  if (spec.k < 2 || spec.k > 36) throw UsageError("code spec: k must lie in [2, 36]");
  spec.delta = digit_list("delta", need(p, "delta", "code"), spec.k);
  for (const auto& w : split(need(p, "B", "code"), '|')) spec.words.push_back(w);
  return spec;
}

std::pair<unsigned, std::vector<unsigned>> parse_digits_body(const std::string& body) {
  const auto p = parse_params(body);
  only(p, {"k", "allow"}, "digits");
  const auto k = number<unsigned>("k", need(p, "k", "digits"));
  if (k < 2 || k > 36) throw UsageError("digits spec: k must lie in [2, 36]");
  return {k, digit_list("allow", need(p, "allow", "digits"), k)};
}

SubstitutionRule parse_subst_body(const std::string& body, std::optional<unsigned>* depth) {
  const auto p = parse_params(body);
  only(p, {"c", "d", "rule", "depth"}, "subst");
  const auto c = number<unsigned>("c", need(p, "c", "subst"));
  const auto d = number<unsigned>("d", need(p, "d", "subst"));
  if (depth && p.count("depth")) *depth = number<unsigned>("depth", p.at("depth"));
  return parse_substitution_rule(c, d, need(p, "rule", "subst"));
}

TowerPairSpec parse_tower_body(const std::string& body, char* which) {
  const auto p = parse_params(body);
  only(p, {"a", "b", "g", "set"}, "tower");
  TowerPairSpec spec;
  spec.alpha = number<double>("a", need(p, "a", "tower"));
  spec.beta = number<double>("b", need(p, "b", "tower"));
  spec.gamma = number<double>("g", need(p, "g", "tower"));
  if (which) {
    *which = 'A';
    if (p.count("set")) {
      const auto& s = p.at("set");
      if (s != "A" && s != "B" && s != "C") throw UsageError("tower spec: set must be A, B or C");
      *which = s[0];
    }
  }
  return spec;
}

std::pair<unsigned, std::vector<std::int64_t>> parse_vectors_body(const std::string& body) {
  const auto p = parse_params(body);
  only(p, {"d", "v", "r"}, "sublattice");
  const auto d = number<unsigned>("d", need(p, "d", "sublattice"));
  if (d == 0) throw UsageError("sublattice spec: d must be positive");
  std::vector<std::int64_t> flat;
  for (const auto& vec : split(need(p, "v", "sublattice"), '|')) {
    const auto coords = split(vec, ';');
    if (coords.size() != d) throw UsageError("sublattice spec: vector '" + vec + "' does not have d coordinates");
    for (const auto& c : coords) flat.push_back(number<std::int64_t>("v", c));
  }
  return {d, flat};
}

AnySet parse_set_spec(const std::string& spec, const SpecContext& ctx) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);
  auto no_body = [&] {
    if (!body.empty()) throw UsageError("generator '" + head + "' takes no parameters");
  };

  if (head == "squares") {
    no_body();
    return gen_perfect_powers(2);
  }
  if (head == "cubes") {
    no_body();
    return gen_perfect_powers(3);
  }
  if (head == "primes") {
    no_body();
    return gen_primes();
  }
  if (head == "all") {
    no_body();
    return gen_all();
  }
  if (head == "empty") {
    no_body();
    return IntegerSet::empty();
  }
  if (head == "powers") {
    const auto p = parse_params(body);
    only(p, {"b"}, "powers");
    return gen_powers(p.count("b") ? number<std::uint64_t>("b", p.at("b")) : 2);
  }
  if (head == "perfect-powers") {
    const auto p = parse_params(body);
    only(p, {"m"}, "perfect-powers");
    return gen_perfect_powers(number<unsigned>("m", need(p, "m", "perfect-powers")));
  }
  if (head == "finite") {
    std::vector<std::uint64_t> xs;
    if (!body.empty())
      for (const auto& x : split(body, '|')) xs.push_back(number<std::uint64_t>("finite", x));
    return gen_finite(std::move(xs));
  }
  if (head == "digits") {
    auto [k, allow] = parse_digits_body(body);
    return gen_digit_set(k, allow);
  }
  if (head == "code") return gen_code_set(parse_code_body(body));
  if (head == "pascal") {
    const auto p = parse_params(body);
    only(p, {"depth"}, "pascal");
    unsigned depth = p.count("depth") ? number<unsigned>("depth", p.at("depth")) : ctx.depth.value_or(10);
    return gen_pascal_mod2(depth);
  }
  if (head == "subst") {
    std::optional<unsigned> depth;
    auto rule = parse_subst_body(body, &depth);
    return gen_substitution(rule, depth ? *depth : ctx.depth.value_or(6));
  }
  if (head == "tower") {
    char which = 'A';
    auto pair = gen_tower_pair(parse_tower_body(body, &which));
    if (which == 'A') return pair.a();
    if (which == 'B') return pair.b();
    // A + B materialized through bit-length 17, the reach of T(4) + 1
    return pointwise(pair.a(), pair.b(), PointwiseOp::sum, (std::uint64_t{1} << 17) - 1);
  }
  if (head == "sublattice") {
    const auto p = parse_params(body);
    auto [d, flat] = parse_vectors_body(body);
    const std::uint64_t r = p.count("r") ? number<std::uint64_t>("r", p.at("r")) : 256;
    return gen_sublattice(d, flat, r);
  }
  if (head == "file") {
    std::ifstream in(body);
    if (!in) throw Error("cannot open set file '" + body + "'");
    return parse_set_stream(in, body);
  }
  throw UsageError("--set: unknown generator '" + head + "'");
}

}  // namespace zdim
