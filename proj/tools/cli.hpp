#pragma once

// The `starcalc` command line, callable in-process for golden tests.
// Exit status: 0 success/pass, 1 evaluation or check failure, 2 usage error.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "starcalc/starcalc.hpp"

namespace starcalc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

struct Options {
  std::string alpha = "identity";
  std::string beta = "identity";
  std::string mode = "direct";
  std::optional<double> tol;
  std::uint64_t seed = 0;
  bool json = false;

  std::string expr;
  std::size_t radial = 2;
  std::size_t angular = 8;
  std::string at;
  std::string suite;
  std::string carrier = "scalar";
  std::size_t trials = kDefaultTrials;
};

namespace detail {

using Json = nlohmann::ordered_json;

inline Json value_json(const StarComplex& z) {
  const auto p = z.preimage();
  return {{"preimage", {p.real(), p.imag()}}, {"image", {z.a().image(), z.b().image()}}};
}

inline Json real_json(const StarReal& r) { return {{"preimage", r.preimage()}, {"image", r.image()}}; }

inline Json pair_json(const GeneratorPair& pair) { return {{"alpha", pair.alpha.id()}, {"beta", pair.beta.id()}}; }

inline void print_json(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

inline std::string text_value(const StarComplex& z) {
  return "preimage " + format_preimages(z) + "  image " + format_images(z);
}

inline std::string text_real(const StarReal& r) {
  return "preimage " + format_number(r.preimage()) + "  image " + format_number(r.image());
}

inline EvalMode other(EvalMode m) { return m == EvalMode::direct ? EvalMode::pullback : EvalMode::direct; }

/// Usage-class failures exit with 2; everything else is a failed evaluation.
inline bool is_usage_error(Errc code) {
  switch (code) {
    case Errc::syntax:
    case Errc::arity:
    case Errc::unknown_name:
    case Errc::unbound_variable:
    case Errc::degenerate_parameter:
    case Errc::bounds:
    case Errc::unsupported_suite: return true;
    default: return false;
  }
}

inline void render_error(std::ostream& err, const Error& e, const std::string& input) {
  err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
  if (!e.subterm().empty()) err << "  in subterm: " << e.subterm() << "\n";
  if (e.offset() >= 0 && !input.empty()) {
    err << "  " << input << "\n";
    err << "  " << std::string(static_cast<std::size_t>(e.offset()), ' ') << "^\n";
  }
}

/// Parses a `(a,b)` point argument (a literal or constant expression).
inline StarComplex parse_point(const std::string& text, const GeneratorPair& pair) {
  Expr e;
  try {
    e = parse_expr(text);
  } catch (Error& ex) {
    ex.set_offset(-1);  // the caret would point into the main expression
    throw;
  }
  if (uses_variable(e)) throw Error(Errc::unbound_variable, "--at must not mention z");
  return dual_mode_eval(e, pair, EvalMode::pullback);
}

inline GridFunction sample_expression(const Expr& e, const DomainPtr& dom, EvalMode mode) {
  return GridFunction::sample(dom, [&](const StarComplex& z) { return dual_mode_eval(e, dom->pair(), mode, z); });
}

// ---------------------------------------------------------------------------

inline int cmd_eval(const Options& o, const GeneratorPair& pair, EvalMode mode, std::ostream& out, std::ostream& err) {
  const double tol = o.tol.value_or(kDefaultTolerance);
  const Expr e = parse_expr(o.expr);
  const StarComplex v = dual_mode_eval(e, pair, mode);
  const StarComplex w = dual_mode_eval(e, pair, other(mode));
  const double agreement = residual(v, w);
  const bool agree = agreement <= tol;
  const StarReal n = c_norm(v);
  if (o.json) {
    print_json(out, Json{{"command", "eval"},
                         {"expr", print(e)},
                         {"pair", pair_json(pair)},
                         {"mode", to_string(mode)},
                         {"value", value_json(v)},
                         {"norm", real_json(n)},
                         {"cross_check", {{"mode", to_string(other(mode))}, {"residual", agreement}, {"agree", agree}}}});
  } else {
    out << "expr   " << print(e) << "\n";
    out << "pair   " << pair.name() << "  mode " << to_string(mode) << "\n";
    out << "value  " << text_value(v) << "\n";
    out << "norm   " << text_real(n) << "\n";
    out << "check  " << to_string(other(mode)) << " residual " << format_number(agreement)
        << (agree ? " (agree)" : " (DISAGREE)") << "\n";
  }
  if (!agree) err << "error: direct and pullback evaluation disagree beyond tol " << format_number(tol) << "\n";
  return agree ? kExitOk : kExitFail;
}

inline int cmd_invert(const Options& o, const GeneratorPair& pair, EvalMode mode, std::ostream& out,
                      std::ostream& err) {
  const double tol = o.tol.value_or(kDefaultInversionTol);
  const Expr e = parse_expr(o.expr);
  const StarComplex x = dual_mode_eval(e, pair, mode);
  const ScalarAlgebra alg(pair);
  std::optional<StarComplex> exact;
  try {
    exact = c_div(alg.unit(), x);
  } catch (const Error& ex) {
    if (ex.code() != Errc::division_by_zero) throw;
  }
  const double ball = c_norm(c_sub(alg.unit(), x)).preimage();
  if (!(ball < 1.0)) {
    if (o.json) {
      Json j{{"command", "invert"},
             {"expr", print(e)},
             {"pair", pair_json(pair)},
             {"x", value_json(x)},
             {"applicable", false},
             {"ball_radius_preimage", ball}};
      j["exact_division"] = exact ? value_json(*exact) : Json(nullptr);
      print_json(out, j);
    } else {
      out << "x      " << text_value(x) << "\n";
      out << "||1-x|| preimage " << format_number(ball) << " (series needs < 1)\n";
      if (exact) out << "exact  " << text_value(*exact) << "\n";
    }
    err << "error: not-applicable: Neumann series needs ||1 - x|| < 1\n";
    return kExitFail;
  }
  const auto r = neumann_inverse(alg, x, tol);
  const double cross = exact ? residual(r.inverse, *exact) : 0.0;
  const bool ok = r.converged && cross <= 10.0 * tol;
  if (o.json) {
    Json j{{"command", "invert"}, {"expr", print(e)}, {"pair", pair_json(pair)}, {"x", value_json(x)},
           {"applicable", true},  {"inverse", value_json(r.inverse)}};
    const auto report = inversion_json(r);
    for (const auto& [k, v] : report.items()) j[k] = v;
    j["exact_division"] = value_json(*exact);
    j["exact_residual"] = cross;
    print_json(out, j);
  } else {
    out << "x        " << text_value(x) << "\n";
    out << "inverse  " << text_value(r.inverse) << "\n";
    out << "series   " << (r.converged ? "converged" : "not converged") << " after " << r.terms_used
        << " terms, residual " << format_number(r.residual.preimage()) << "\n";
    out << "exact    " << text_value(*exact) << "  (residual " << format_number(cross) << ")\n";
  }
  if (!ok) err << "error: series inverse failed the tolerance " << format_number(tol) << "\n";
  return ok ? kExitOk : kExitFail;
}

inline int cmd_grid(const Options& o, const GeneratorPair& pair, EvalMode mode, std::ostream& out) {
  const Expr e = parse_expr(o.expr);
  const DomainPtr dom = make_disk_domain(pair, o.radial, o.angular);
  const GridFunction f = sample_expression(e, dom, mode);
  if (o.json) {
    auto doc = grid_to_json(f);
    Json j{{"command", "grid"}, {"expr", print(e)}, {"mode", to_string(mode)}};
    for (auto& [k, v] : doc.items()) j[k] = v;
    print_json(out, j);
  } else {
    out << "expr      " << print(e) << "\n";
    out << "domain    " << dom->size() << " points (radial " << o.radial << ", angular " << o.angular << ")\n";
    for (std::size_t i = 0; i < f.size(); ++i)
      out << "  z " << format_preimages(dom->points()[i]) << "  f " << format_preimages(f[i]) << "\n";
    out << "sup_norm  " << text_real(sup_norm(f)) << "\n";
  }
  return kExitOk;
}

inline int cmd_quotient(const Options& o, const GeneratorPair& pair, EvalMode mode, std::ostream& out) {
  const Expr e = parse_expr(o.expr);
  const StarComplex at = parse_point(o.at, pair);
  if (std::abs(at.preimage()) > kDiskRadius + kDiskSlack)
    throw Error(Errc::point_not_in_domain, "--at " + format_preimages(at) + " lies outside the disk of radius 1/2");
  const DomainPtr dom = with_point(make_disk_domain(pair, o.radial, o.angular), at);
  const EvaluationIdeal ideal(dom, at);
  const GridFunction f = sample_expression(e, dom, mode);
  const Coset coset = quotient_map(f, ideal);
  const GridFunction witness = quotient_witness(f, ideal);
  const StarReal attained = sup_norm(fn_add(f, witness));
  const bool member = ideal_membership(ideal, f, o.tol.value_or(kDefaultTolerance));
  if (o.json) {
    print_json(out, Json{{"command", "quotient"},
                         {"expr", print(e)},
                         {"pair", pair_json(pair)},
                         {"mode", to_string(mode)},
                         {"at", value_json(ideal.point())},
                         {"domain_points", dom->size()},
                         {"value_at", value_json(coset.value)},
                         {"quotient_norm", real_json(coset.norm)},
                         {"witness_norm", real_json(attained)},
                         {"sup_norm", real_json(sup_norm(f))},
                         {"in_ideal", member}});
  } else {
    out << "expr           " << print(e) << "\n";
    out << "at             " << format_preimages(ideal.point()) << " (" << dom->size() << " grid points)\n";
    out << "f(at)          " << text_value(coset.value) << "\n";
    out << "quotient_norm  " << text_real(coset.norm) << "\n";
    out << "witness_norm   " << text_real(attained) << "\n";
    out << "sup_norm       " << text_real(sup_norm(f)) << "\n";
    out << "in_ideal       " << (member ? "yes" : "no") << "\n";
  }
  return kExitOk;
}

inline int cmd_axioms(const Options& o, const GeneratorPair& pair, std::ostream& out) {
  const Suite suite = parse_suite(o.suite);
  const double tol = o.tol.value_or(kDefaultTolerance);
  AxiomReport report;
  if (o.carrier == "scalar") {
    report = run_axiom_suite(suite, ScalarAlgebra(pair), o.trials, tol, o.seed);
  } else if (o.carrier == "grid") {
    report = run_axiom_suite(suite, GridAlgebra(make_disk_domain(pair, o.radial, o.angular)), o.trials, tol, o.seed);
  } else if (o.carrier == "polynomial") {
    report =
        run_axiom_suite(suite, PolynomialAlgebra(make_disk_domain(pair, o.radial, o.angular)), o.trials, tol, o.seed);
  } else {
    throw Error(Errc::unknown_name, "unknown carrier '" + o.carrier + "' (expected scalar, grid or polynomial)");
  }
  out << emit_report({report}, o.json ? ReportFormat::json : ReportFormat::text);
  return report.passed ? kExitOk : kExitFail;
}

}  // namespace detail

/// Runs one invocation; `args` excludes the program name.
inline int run_command(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"starcalc: *-calculus arithmetic, series inversion and axiom checks", "starcalc"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--alpha", o.alpha, "alpha generator: identity, exp or cube")->capture_default_str();
  app.add_option("--beta", o.beta, "beta generator: identity, exp or cube")->capture_default_str();
  app.add_option("--mode", o.mode, "evaluation mode: direct or pullback")->capture_default_str();
  app.add_option("--tol", o.tol, "tolerance on preimage scale (command-specific default)");
  app.add_option("--seed", o.seed, "seed for randomized commands")->capture_default_str();
  app.add_flag("--json", o.json, "JSON on standard output");

  auto* eval = app.add_subcommand("eval", "evaluate an expression in both modes");
  eval->add_option("expr", o.expr, "expression; literals (a,b) are preimage pairs")->required();
  auto* invert = app.add_subcommand("invert", "Neumann-series inverse with an exact-division cross-check");
  invert->add_option("expr", o.expr, "expression for x")->required();
  auto* grid = app.add_subcommand("grid", "sample an expression in z on the disk grid");
  grid->add_option("expr", o.expr, "expression in z")->required();
  auto* quotient = app.add_subcommand("quotient", "quotient norm modulo the functions vanishing at a point");
  quotient->add_option("expr", o.expr, "expression in z")->required();
  quotient->add_option("--at", o.at, "point (a,b) as preimages, |.| <= 1/2")->required();
  for (auto* sub : {grid, quotient}) {
    sub->add_option("--radial", o.radial, "radial steps")->capture_default_str();
    sub->add_option("--angular", o.angular, "angular steps")->capture_default_str();
  }
  auto* axioms = app.add_subcommand("axioms", "run a randomized axiom suite");
  axioms->add_option("--suite", o.suite, "vector-space, norm, normed-algebra, involution, c-star or field")
      ->required();
  axioms->add_option("--carrier", o.carrier, "scalar, grid or polynomial")->capture_default_str();
  axioms->add_option("--trials", o.trials, "trials per law")->capture_default_str();
  axioms->add_option("--radial", o.radial, "radial steps of the grid domain")->capture_default_str();
  axioms->add_option("--angular", o.angular, "angular steps of the grid domain")->capture_default_str();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    err << "run 'starcalc --help' for usage\n";
    return kExitUsage;
  }

  try {
    const GeneratorPair pair = pair_from_names(o.alpha, o.beta);
    const EvalMode mode = parse_mode(o.mode);
    if (o.tol && !(*o.tol > 0.0)) throw Error(Errc::bounds, "--tol must be positive");
    if (*eval) return detail::cmd_eval(o, pair, mode, out, err);
    if (*invert) return detail::cmd_invert(o, pair, mode, out, err);
    if (*grid) return detail::cmd_grid(o, pair, mode, out);
    if (*quotient) return detail::cmd_quotient(o, pair, mode, out);
    return detail::cmd_axioms(o, pair, out);
  } catch (const Error& e) {
    detail::render_error(err, e, o.expr);
    return detail::is_usage_error(e.code()) ? kExitUsage : kExitFail;
  }
}

}  // namespace starcalc::cli
