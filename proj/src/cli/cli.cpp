#include "zdim/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "zdim/closed_form.hpp"
#include "zdim/errors.hpp"
#include "zdim/estimators.hpp"
#include "zdim/gales.hpp"
#include "zdim/generators.hpp"
#include "zdim/set_algebra.hpp"
#include "zdim/spec_string.hpp"
#include "zdim/verify.hpp"

namespace zdim {

namespace {

std::string fixed(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

// Output goes to a buffer first so a failed run leaves no partial file.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write '" + path + "'");
  f << text;
  f.flush();
  if (!f) throw Error("cannot write '" + path + "'");
}

const IntegerSet& need_integer(const AnySet& s, const std::string& flag) {
  if (!std::holds_alternative<IntegerSet>(s)) throw UsageError(flag + ": this subcommand needs a set of integers");
  return std::get<IntegerSet>(s);
}

NormKind norm_for(const AnySet& s, const std::string& text) {
  if (!text.empty()) {
    NormKind k;
    try {
      k = parse_norm_kind(text);
    } catch (const Error& e) {
      throw UsageError(std::string("--norm: ") + e.what());
    }
    const bool lattice = std::holds_alternative<LatticePointSet>(s);
    if (lattice && (k == NormKind::value || k == NormKind::binary_length))
      throw UsageError("--norm: lattice sets take euclidean or l1");
    if (!lattice && (k == NormKind::euclidean || k == NormKind::l1))
      throw UsageError("--norm: integer sets take value or binary");
    return k;
  }
  return std::holds_alternative<LatticePointSet>(s) ? NormKind::euclidean : NormKind::value;
}

struct Flags {
  std::string set, with, out, plot, norm, op, code, digits, subst, lattice, theorem;
  unsigned nmax = 10, window = kDefaultWindow, fractal_window = 4, dump_depth = 8;
  std::optional<unsigned> depth;
  double s = 0.6;
  std::uint64_t r = 1, k = 1, budget = 0;
  double alpha = 0.3, beta = 0.5, gamma = 0.7;
};

void run_gen(const Flags& f, std::ostream& out) {
  const auto set = parse_set_spec(f.set, {f.depth});
  std::ostringstream text;
  if (const auto* is = std::get_if<IntegerSet>(&set)) {
    write_integer_set(text, *is, 1, std::uint64_t{1} << f.nmax);
  } else {
    write_lattice_set(text, std::get<LatticePointSet>(set));
  }
  emit(f.out, text.str(), out);
}

CountProfile profile_for(const Flags& f, const AnySet& set) {
  return block_profile(set, norm_for(set, f.norm), f.nmax);
}

void run_count(const Flags& f, std::ostream& out) {
  const auto set = parse_set_spec(f.set, {f.depth});
  const auto prof = profile_for(f, set);
  std::ostringstream text, plot;
  write_profile_csv(text, prof);
  if (!f.plot.empty()) {
    write_plot_data(plot, prof);
    emit(f.plot, plot.str(), out);
  }
  emit(f.out, text.str(), out);
}

void run_estimate(const Flags& f, std::ostream& out) {
  if (f.window > f.nmax) throw UsageError("--window must not exceed --nmax");
  const auto set = parse_set_spec(f.set, {f.depth});
  const auto est = upper_dim_estimate(profile_for(f, set), f.window);
  std::ostringstream text, plot;
  write_estimate_csv(text, est);
  if (!f.plot.empty()) {
    write_plot_data(plot, est);
    emit(f.plot, plot.str(), out);
  }
  emit(f.out, text.str(), out);
}

void run_solve(const Flags& f, std::ostream& out) {
  const int given = !f.code.empty() + !f.digits.empty() + !f.subst.empty() + !f.lattice.empty();
  if (given != 1) throw UsageError("solve: give exactly one of --code, --digits, --subst, --lattice");
  std::ostringstream text;
  if (!f.code.empty() || !f.digits.empty()) {
    InstantaneousCodeSpec spec;
    if (!f.code.empty()) {
      spec = parse_code_body(f.code);
    } else {
      auto [k, allow] = parse_digits_body(f.digits);
      spec = digit_code(k, allow);
    }
    const auto problems = validate_code(spec);
    if (!problems.empty()) throw CodeError(problems);
    const auto r = code_dimension(spec);
    text << "s_star=" << fixed(r.s_star) << '\n'
         << "beta_at_s_star=" << fixed(r.beta_at_s_star, 12) << '\n'
         << "iterations=" << r.iterations << '\n';
  } else if (!f.subst.empty()) {
    const auto rule = parse_subst_body(f.subst);
    text << "survivors=" << rule.survivors() << '\n' << "dimension=" << fixed(substitution_dimension(rule)) << '\n';
  } else {
    auto [d, flat] = parse_vectors_body(f.lattice);
    text << "dimension=" << lattice_subspace_dimension(d, flat) << '\n';
  }
  emit(f.out, text.str(), out);
}

void run_fractal(const Flags& f, std::ostream& out) {
  if (f.set.rfind("subst:", 0) != 0) throw UsageError("--set: fractal needs a subst:... spec");
  std::optional<unsigned> spec_depth;
  const auto rule = parse_subst_body(f.set.substr(6), &spec_depth);
  const unsigned depth = f.depth ? *f.depth : spec_depth.value_or(8);
  const auto set = gen_substitution(rule, depth);
  // |F_k|: points inside the scale-c^k cube
  std::vector<std::int64_t> side{1};
  for (unsigned k = 0; k < depth; ++k) side.push_back(side.back() * rule.c);
  std::vector<Count> within(depth + 1, 0);
  set.enumerate([&](Coords p) {
    const std::int64_t m = *std::max_element(p.begin(), p.end());
    for (unsigned k = 0; k <= depth; ++k)
      if (m <= side[k]) ++within[k];
    return true;
  });
  std::ostringstream text;
  text << "k,points,survivors_pow_k\n";
  Count y = 1;
  for (unsigned k = 0; k <= depth; ++k) {
    if (k > 0) y *= rule.survivors();
    text << k << ',' << within[k] << ',' << y << '\n';
  }
  const auto est = substitution_estimate(rule, depth, f.fractal_window);
  write_closed_form_csv(text, {{"substitution", "c=" + std::to_string(rule.c) + ",d=" + std::to_string(rule.d) +
                                                    ",rule=" + rule.rule_string() + ",depth=" + std::to_string(depth),
                                substitution_dimension(rule), est.slope}});
  emit(f.out, text.str(), out);
}

void run_gale(const Flags& f, std::ostream& out) {
  const auto any = parse_set_spec(f.set, {f.depth});
  const auto& set = need_integer(any, "--set");
  const unsigned depth = f.depth.value_or(16);
  const auto sg = build_supergale(set, f.s, depth, std::min(f.window, depth));
  std::ostringstream text;
  text << "s=" << fixed(f.s) << '\n'
       << "upper_estimate=" << fixed(sg.upper_estimate) << '\n'
       << "epsilon=" << fixed(sg.epsilon) << '\n'
       << "n0=" << sg.n0 << '\n'
       << "c0=" << fixed(sg.c0) << '\n'
       << "c1=" << fixed(sg.c1) << '\n'
       << "d_lambda=" << fixed(sg.gale.value(0, 0)) << '\n'
       << "deficiency=" << gale_deficiency(sg.gale, GaleMode::gale) << '\n';
  std::uint64_t members = 0, won = 0;
  set.enumerate(1, (std::uint64_t{1} << depth) - 1, [&](std::uint64_t x) {
    ++members;
    won += succeeds(sg.gale, x) ? 1 : 0;
    return true;
  });
  text << "succeeds=" << won << '/' << members << '\n';
  text << "k,kraft_count,kraft_bound,ok\n";
  for (unsigned k = 0; k <= depth; ++k) {
    const auto kr = kraft_check(sg.gale, k);
    text << k << ',' << kr.count << ',' << fixed(kr.bound) << ',' << (kr.ok ? "yes" : "no") << '\n';
  }
  if (!f.out.empty()) {
    std::ostringstream table;
    write_gale_csv(table, sg.gale, f.dump_depth);
    emit(f.out, table.str(), out);
  }
  out << text.str();
}

void run_algebra(const Flags& f, std::ostream& out) {
  const auto a_any = parse_set_spec(f.set, {f.depth});
  std::ostringstream text;
  const std::uint64_t bound = std::uint64_t{1} << f.nmax;
  if (f.op == "components") {
    const std::uint64_t r = f.r;
    if (const auto* is = std::get_if<IntegerSet>(&a_any)) write_components_csv(text, bounded_components(is->elements(1, bound), r));
    else write_components_csv(text, bounded_components(std::get<LatticePointSet>(a_any), r));
    emit(f.out, text.str(), out);
    return;
  }
  const auto& a = need_integer(a_any, "--set");
  auto operand = [&]() -> IntegerSet {
    if (f.with.empty()) throw UsageError("--with is required for --op " + f.op);
    return need_integer(parse_set_spec(f.with, {f.depth}), "--with");
  };
  if (f.window > f.nmax) throw UsageError("--window must not exceed --nmax");
  DimensionEstimate est;
  if (f.op == "cartesian") {
    const auto c = cartesian(a, operand(), bound * 2);
    est = upper_dim_estimate(block_profile(c, NormKind::euclidean, f.nmax), f.window);
  } else {
    IntegerSet result;
    if (f.op == "sum") result = pointwise(a, operand(), PointwiseOp::sum, bound);
    else if (f.op == "product") result = pointwise(a, operand(), PointwiseOp::product, bound);
    else if (f.op == "union") result = unite(a, operand());
    else if (f.op == "translate") result = affine(a, f.k, AffineMode::translate);
    else if (f.op == "dilate") result = affine(a, f.k, AffineMode::dilate);
    else throw UsageError("--op: unknown operation '" + f.op + "'");
    est = upper_dim_estimate(block_profile(result, NormKind::value, f.nmax), f.window);
  }
  write_estimate_csv(text, est);
  emit(f.out, text.str(), out);
}

int run_verify(const Flags& f, std::ostream& out) {
  VerifyOptions opt;
  opt.tower = {f.alpha, f.beta, f.gamma};
  std::vector<std::string> ids;
  if (f.theorem == "all") ids = verify_suite_ids();
  else ids.push_back(f.theorem);
  bool ok = true;
  for (const auto& id : ids) {
    if (ids.size() > 1) out << "# " << id << '\n';
    ok = print_checks(out, run_verify_suite(id, opt)) && ok;
  }
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"zeta-dimension toolkit: generate, count, estimate, solve, verify"};
  app.name("zdim");
  app.require_subcommand(1);
  Flags f;
  app.add_option("--budget", f.budget, "Enumeration budget (elements per streaming call); overrides ZDIM_BUDGET")
      ->check(CLI::PositiveNumber);

  auto set_opt = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--set", f.set, "Generator spec, e.g. squares, digits:k=3,allow=02");
    if (required) o->required();
  };
  auto nmax_opt = [&](CLI::App* sub) {
    sub->add_option("--nmax", f.nmax, "Largest scale n (blocks up to 2^n)")->check(CLI::Range(0u, 62u))->capture_default_str();
  };
  auto depth_opt = [&](CLI::App* sub) {
    sub->add_option("--depth", f.depth, "Depth for lattice generators or gale tables");
  };

  auto* gen = app.add_subcommand("gen", "List the elements of a set up to 2^nmax");
  set_opt(gen, true);
  nmax_opt(gen);
  depth_opt(gen);
  gen->add_option("--out", f.out, "Output path (default stdout)");

  auto* count = app.add_subcommand("count", "Dyadic block and cumulative counts as CSV");
  set_opt(count, true);
  nmax_opt(count);
  depth_opt(count);
  count->add_option("--norm", f.norm, "value | binary | euclidean | l1");
  count->add_option("--out", f.out, "Output path (default stdout)");
  count->add_option("--plot", f.plot, "Also write n,exponent plot data here");

  auto* estimate = app.add_subcommand("estimate", "Upper and lower dimension estimates as CSV");
  set_opt(estimate, true);
  nmax_opt(estimate);
  depth_opt(estimate);
  estimate->add_option("--window", f.window, "Tail window size")->check(CLI::Range(1u, 62u))->capture_default_str();
  estimate->add_option("--norm", f.norm, "value | binary | euclidean | l1");
  estimate->add_option("--out", f.out, "Output path (default stdout)");
  estimate->add_option("--plot", f.plot, "Also write n,exponent plot data here");

  auto* solve = app.add_subcommand("solve", "Closed-form dimensions");
  solve->add_option("--code", f.code, "k=3,delta=2,B=0|2");
  solve->add_option("--digits", f.digits, "k=10,allow=012345689");
  solve->add_option("--subst", f.subst, "c=2,d=2,rule=000-");
  solve->add_option("--lattice", f.lattice, "d=2,v=1;0|0;1");
  solve->add_option("--out", f.out, "Output path (default stdout)");

  auto* fractal = app.add_subcommand("fractal", "Substitution fractal counts, closed form and estimate");
  set_opt(fractal, true);
  depth_opt(fractal);
  fractal->add_option("--window", f.fractal_window, "Tail window size")->check(CLI::Range(1u, 62u))->capture_default_str();
  fractal->add_option("--out", f.out, "Output path (default stdout)");

  auto* gale = app.add_subcommand("gale", "Build the supergale for a set and check it");
  set_opt(gale, true);
  gale->add_option("--s", f.s, "Gale parameter s")->capture_default_str();
  depth_opt(gale);
  gale->add_option("--window", f.window, "Tail window size for the dimension estimate")->check(CLI::Range(1u, 62u));
  gale->add_option("--out", f.out, "Write the gale table (w,log2_value) here");
  gale->add_option("--dump-depth", f.dump_depth, "Deepest strings written to --out")->capture_default_str();

  auto* algebra = app.add_subcommand("algebra", "Set operations and bounded components");
  set_opt(algebra, true);
  algebra->add_option("--op", f.op, "sum | product | cartesian | union | translate | dilate | components")
      ->required()
      ->check(CLI::IsMember({"sum", "product", "cartesian", "union", "translate", "dilate", "components"}));
  algebra->add_option("--with", f.with, "Second operand spec");
  nmax_opt(algebra);
  depth_opt(algebra);
  algebra->add_option("--window", f.window, "Tail window size")->check(CLI::Range(1u, 62u));
  algebra->add_option("--k", f.k, "Shift or factor for translate/dilate")->check(CLI::PositiveNumber);
  algebra->add_option("--r", f.r, "Step bound for components")->check(CLI::PositiveNumber);
  algebra->add_option("--out", f.out, "Output path (default stdout)");

  auto* verify = app.add_subcommand("verify", "Run a theorem suite and print PASS/FAIL per check");
  verify->footer("suites:\n" + verify_suite_summary() + "  all     every suite in turn");
  std::vector<std::string> ids = verify_suite_ids();
  ids.push_back("all");
  verify->add_option("theorem", f.theorem, "Suite id")->required()->check(CLI::IsMember(ids));
  verify->add_option("--alpha", f.alpha, "thm5.6 alpha")->capture_default_str();
  verify->add_option("--beta", f.beta, "thm5.6 beta")->capture_default_str();
  verify->add_option("--gamma", f.gamma, "thm5.6 gamma")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  // library calls read their default budget from the environment
  if (f.budget) setenv("ZDIM_BUDGET", std::to_string(f.budget).c_str(), 1);

  try {
    if (*gen) run_gen(f, out);
    else if (*count) run_count(f, out);
    else if (*estimate) run_estimate(f, out);
    else if (*solve) run_solve(f, out);
    else if (*fractal) run_fractal(f, out);
    else if (*gale) run_gale(f, out);
    else if (*algebra) run_algebra(f, out);
    else if (*verify) return run_verify(f, out);
    return 0;
  } catch (const UsageError& e) {
    err << "zdim: " << e.what() << '\n';
    return 2;
  } catch (const CodeError& e) {
    err << "zdim: invalid code\n";
    for (const auto& v : e.violations()) err << "  " << v << '\n';
    return 1;
  } catch (const Error& e) {
    err << "zdim: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace zdim
