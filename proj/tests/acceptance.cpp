// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "golden_cases.hpp"
#include "oracle.hpp"
#include "starcalc/starcalc.hpp"

using namespace starcalc;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail = "first failure: " + what;
      pass = false;
    }
  }
};

std::string sci(double v) {
  std::ostringstream s;
  s.precision(2);
  s << std::scientific << v;
  return s.str();
}

// 1. Direct and pullback evaluation agree; (identity, identity) is classical arithmetic.
Outcome field_oracle() {
  Outcome o;
  double worst = 0.0, worst_classical = 0.0;
  std::uint64_t seed = 1000;
  for (const auto& pair : kStandardPairs) {
    Rng rng(seed++);
    const bool classical = pair.alpha.kind() == GeneratorKind::identity && pair.beta.kind() == GeneratorKind::identity;
    for (int n = 0; n < 1000; ++n) {
      const Expr e = random_expression(rng);
      const auto d = dual_mode_eval(e, pair, EvalMode::direct).preimage();
      const auto p = dual_mode_eval(e, pair, EvalMode::pullback).preimage();
      const double r = oracle::rel(d, p);
      worst = std::max(worst, r);
      o.require(r <= 1e-9, pair.name() + " modes disagree on " + print(e));
      if (classical) {
        const double c = oracle::rel(d, oracle::evaluate(e));
        worst_classical = std::max(worst_classical, c);
        o.require(c <= 1e-12, "classical mismatch on " + print(e));
      }
    }
  }
  if (o.pass)
    o.detail = "4000 trees, worst mode residual " + sci(worst) + ", worst classical residual " + sci(worst_classical);
  return o;
}

// 2. C*-identity suite on scalar and grid carriers; broken involutions fail.
Outcome c_star_identity() {
  Outcome o;
  double worst = 0.0;
  std::uint64_t seed = 2000;
  for (const auto& pair : kStandardPairs) {
    const ScalarAlgebra s(pair);
    const GridAlgebra g(make_disk_domain(pair, 2, 8));
    for (const auto& r : {run_axiom_suite(Suite::c_star, s, 500, 1e-9, seed++),
                          run_axiom_suite(Suite::c_star, g, 500, 1e-9, seed++)}) {
      worst = std::max(worst, r.worst_residual);
      o.require(r.passed, r.carrier + " " + pair.name() + " failed");
    }
    o.require(!run_axiom_suite(Suite::c_star, BrokenInvolution<ScalarAlgebra>(s), 500, 1e-9, seed++).passed,
              "broken scalar involution passed on " + pair.name());
    o.require(!run_axiom_suite(Suite::c_star, BrokenInvolution<GridAlgebra>(g), 500, 1e-9, seed++).passed,
              "broken grid involution passed on " + pair.name());
  }
  if (o.pass) o.detail = "8 suites pass (worst " + sci(worst) + "), 8 mutation runs fail";
  return o;
}

// 3. ||z w|| = ||z|| ||w|| and ||z conj(z)|| = ||z||^2.
Outcome norm_laws() {
  Outcome o;
  double worst = 0.0;
  std::uint64_t seed = 3000;
  for (const auto& pair : kStandardPairs) {
    Rng rng(seed++);
    for (int n = 0; n < 1000; ++n) {
      const auto z = sample_star_complex(rng, pair), w = sample_star_complex(rng, pair);
      const double r1 = real_residual(c_norm(c_mul(z, w)), c_norm(z) * c_norm(w));
      const double r2 = real_residual(c_norm(c_mul(z, c_conj(z))), square(c_norm(z)));
      worst = std::max({worst, r1, r2});
      o.require(r1 <= 1e-9 && r2 <= 1e-9, pair.name() + " norm law");
    }
  }
  if (o.pass) o.detail = "4000 trials, worst " + sci(worst);
  return o;
}

// 4. Neumann inversion on scalars in the 0.9 ball and on f(z) = z + 1.
Outcome neumann() {
  Outcome o;
  double worst_res = 0.0, worst_exact = 0.0;
  std::uint64_t seed = 4000;
  for (const auto& pair : kStandardPairs) {
    const ScalarAlgebra alg(pair);
    Rng rng(seed++);
    for (int n = 0; n < 200; ++n) {
      const auto d = sample_in_disk(rng, pair, 0.9);
      const auto x = c_sub(alg.unit(), d);
      const auto r = neumann_inverse(alg, x);
      const double res = std::max(r.residual.preimage(), r.left_residual.preimage());
      // Independent reference: std::complex division on preimages.
      const double ex = oracle::rel(r.inverse.preimage(), 1.0 / x.preimage());
      worst_res = std::max(worst_res, res);
      worst_exact = std::max(worst_exact, ex);
      o.require(r.converged && res <= 1e-8, pair.name() + " residual " + sci(res));
      o.require(ex <= 1e-7, pair.name() + " exact mismatch " + sci(ex));
    }
    const GridAlgebra grid(make_disk_domain(pair, 2, 8));
    const auto z = GridFunction::coordinate(grid.domain());
    const auto f = grid.add(z, grid.unit());
    const double dist = grid.norm(grid.sub(f, grid.unit())).preimage();
    o.require(std::abs(dist - 0.5) <= 4 * std::numeric_limits<double>::epsilon(),
              pair.name() + " ||f - 1|| preimage " + std::to_string(dist));
    const auto r = neumann_inverse(grid, f);
    o.require(r.converged, pair.name() + " grid series did not converge");
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double ex = oracle::rel(r.inverse[i].preimage(), 1.0 / (grid.domain()->points()[i].preimage() + 1.0));
      worst_exact = std::max(worst_exact, ex);
      o.require(ex <= 1e-8, pair.name() + " grid point " + std::to_string(i));
    }
  }
  if (o.pass)
    o.detail = "800 scalars + 4 grids, worst residual " + sci(worst_res) + ", worst exact mismatch " + sci(worst_exact);
  return o;
}

// 5. Perturbative inverse and the relaxed continuity bound.
Outcome perturbative() {
  Outcome o;
  std::size_t literal_violations = 0, trials = 0;
  double worst = 0.0;
  std::uint64_t seed = 5000;
  for (const auto& pair : kStandardPairs) {
    const ScalarAlgebra alg(pair);
    Rng rng(seed++);
    for (int n = 0; n < 200; ++n) {
      const double rho = rng.uniform(0.5, 2.0), theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const auto x0 = StarComplex::from_preimage(pair, std::polar(rho, theta));
      const auto x0_inv = StarComplex::from_preimage(pair, 1.0 / x0.preimage());
      // ||x - x0|| <= rho/2 keeps c = ||x0^-1|| ||x - x0|| <= 1/2.
      const auto x = c_add(x0, sample_in_disk(rng, pair, 0.5 * rho));
      const auto r = perturbative_inverse(alg, x, x0, x0_inv);
      const double ex = oracle::rel(r.inverse.preimage(), 1.0 / x.preimage());
      worst = std::max(worst, ex);
      o.require(r.converged && ex <= 1e-7, pair.name() + " perturbative mismatch " + sci(ex));
      const auto b = continuity_bound_check(alg, x, x0, x0_inv);
      o.require(b.holds, pair.name() + " relaxed bound violated");
      literal_violations += b.literal_holds ? 0 : 1;
      ++trials;
    }
  }
  // Fixed fixture for the factor-free bound: x0 = 1, x = 0.9.
  const ScalarAlgebra id(kStandardPairs[0]);
  const auto fixture = continuity_bound_check(id, StarComplex::from_preimages(id.pair(), 0.9, 0.0), id.unit(), id.unit());
  o.require(fixture.holds, "relaxed bound fails on x0 = 1, x = 0.9");
  if (o.pass)
    o.detail = std::to_string(trials) + " pairs, worst mismatch " + sci(worst) +
               "; factor-free bound not asserted (violated on " + std::to_string(literal_violations) + " samples" +
               (fixture.literal_holds ? "" : " and on x0 = 1, x = 0.9") + ")";
  return o;
}

// 6. Hermitian decomposition, adjoint of inverse, unitary norms.
template <class A>
void decomposition(Outcome& o, const A& alg, Rng& rng, double& worst) {
  for (int n = 0; n < 200; ++n) {
    const auto x = alg.sample(rng, SampleBounds{});
    const auto [u, v] = hermitian_parts(alg, x);
    const double r = alg.residual(recombine_parts(alg, u, v), x);
    worst = std::max(worst, r);
    o.require(r <= 1e-9, alg.carrier() + " decomposition residual " + sci(r));
    o.require(classify_element(alg, u).hermitian && classify_element(alg, v).hermitian,
              alg.carrier() + " part not hermitian");
  }
}

Outcome hermitian_and_adjoint() {
  Outcome o;
  double worst_parts = 0.0, worst_adj = 0.0, worst_unit = 0.0;
  std::uint64_t seed = 6000;
  for (const auto& pair : kStandardPairs) {
    Rng rng(seed++);
    const ScalarAlgebra s(pair);
    const GridAlgebra g(make_disk_domain(pair, 2, 8));
    decomposition(o, s, rng, worst_parts);
    decomposition(o, g, rng, worst_parts);

    const auto f = g.add(GridFunction::coordinate(g.domain()), g.unit());
    const double adj =
        g.residual(neumann_inverse(g, g.star(f)).inverse, g.star(neumann_inverse(g, f).inverse));
    worst_adj = std::max(worst_adj, adj);
    o.require(adj <= 1e-8, pair.name() + " adjoint inverse of z + 1");
    for (int n = 0; n < 100; ++n) {
      const auto x = sample_star_complex(rng, pair);
      if (std::abs(x.preimage()) < 0.1) continue;
      const auto lhs = c_div(s.unit(), c_conj(x));
      const auto rhs = c_conj(c_div(s.unit(), x));
      const double r = residual(lhs, rhs);
      worst_adj = std::max(worst_adj, r);
      o.require(r <= 1e-8, pair.name() + " adjoint inverse " + format_preimages(x));
      const auto d = sample_in_disk(rng, pair, 0.9);
      const auto y = g.sub(g.unit(), GridFunction::constant(g.domain(), d));
      const auto yy = g.mul(y, g.add(g.unit(), g.scale(d, GridFunction::coordinate(g.domain()))));
      if (g.norm(g.sub(g.unit(), yy)).preimage() < 0.95) {
        const double rg = g.residual(neumann_inverse(g, g.star(yy)).inverse, g.star(neumann_inverse(g, yy).inverse));
        worst_adj = std::max(worst_adj, rg);
        o.require(rg <= 1e-8, pair.name() + " adjoint inverse on grid");
      }
      const auto unitary = sample_unit_modulus(rng, pair);
      const double un = std::abs(c_norm(unitary).preimage() - 1.0);
      worst_unit = std::max(worst_unit, un);
      o.require(un <= 1e-12, pair.name() + " unitary norm " + sci(un));
      o.require(classify_element(s, unitary).unitary, pair.name() + " unit-modulus sample not unitary");
    }
  }
  if (o.pass)
    o.detail = "worst decomposition " + sci(worst_parts) + ", adjoint-inverse " + sci(worst_adj) + ", unitary norm " +
               sci(worst_unit);
  return o;
}

// 7. Evaluation functionals: homomorphism, *-homomorphism, kernel/image structure.
Outcome evaluation_structure() {
  Outcome o;
  std::uint64_t seed = 7000;
  std::size_t checks = 0;
  for (const auto& pair : kStandardPairs) {
    const auto dom = make_disk_domain(pair, 2, 8);
    for (std::size_t idx : {0u, 1u, 4u, 10u, 15u}) {
      const auto at = dom->points()[idx];
      auto phi = evaluation_functional(dom, at);
      for (const auto& r : {homomorphism_check(phi, 500, 1e-9, seed++), star_homomorphism_check(phi, 500, 1e-9, seed++),
                            structure_theorems_check(phi, 500, 1e-9, seed++), character_check(phi, 500, 1e-9, seed++)}) {
        o.require(r.passed, pair.name() + " " + r.suite + " at " + format_preimages(at));
        ++checks;
      }
      const EvaluationIdeal ideal(dom, at);
      const GridAlgebra alg(dom);
      Rng rng(seed++);
      for (int n = 0; n < 100; ++n) {
        auto f = alg.sample(rng, SampleBounds{});
        if (n % 2 == 0) f = project_to_ideal(f, ideal);
        o.require(kernel_membership(phi, f) == ideal_membership(ideal, f), "kernel and ideal disagree");
      }
    }
  }
  if (o.pass) o.detail = std::to_string(checks) + " audits at 5 points x 4 pairs pass; kernel = I_z on 2000 samples";
  return o;
}

// 8. Quotient norm: closed form and submultiplicativity.
Outcome quotient() {
  Outcome o;
  std::uint64_t seed = 8000;
  double worst = 0.0;
  for (const auto& pair : kStandardPairs) {
    const auto dom = make_disk_domain(pair, 2, 8);
    const GridAlgebra alg(dom);
    Rng rng(seed++);
    for (int n = 0; n < 500; ++n) {
      const auto f = alg.sample(rng, SampleBounds{}), g = alg.sample(rng, SampleBounds{});
      const EvaluationIdeal ideal(dom, dom->points()[static_cast<std::size_t>(rng.integer(0, 16))]);
      const auto qf = quotient_norm(f, ideal), qg = quotient_norm(g, ideal);
      const auto qfg = quotient_norm(alg.mul(f, g), ideal);
      const auto bound = qf * qg;
      o.require(qfg.preimage() <= bound.preimage() + 1e-12 * std::max(1.0, bound.preimage()),
                pair.name() + " quotient submultiplicativity");
      const double direct = std::abs(f[ideal.index()].preimage());
      const double r = oracle::rel(qf.preimage(), direct);
      worst = std::max(worst, r);
      o.require(r <= 1e-12, pair.name() + " quotient norm vs |f(z)|");
      o.require(std::abs(alg.norm(alg.add(f, quotient_witness(f, ideal))).preimage() - qf.preimage()) <= 1e-12,
                pair.name() + " witness does not attain the infimum");
    }
  }
  if (o.pass) o.detail = "2000 triples, worst closed-form residual " + sci(worst);
  return o;
}

// 9. Series engine on the beta-geometric series 1/2^k.
Outcome series() {
  Outcome o;
  for (const auto& pair : kStandardPairs) {
    for (const Generator g : {pair.alpha, pair.beta}) {
      // Terms 1/2^k by halving, since 2^k itself leaves the exp window near k = 10.
      const StarReal two = embed_int(g, 2);
      StarReal term = star_one(g);
      const auto r = series_sum(
          g,
          [&](std::size_t) {
            term = term / two;
            return term;
          },
          1e-13);
      o.require(r.converged && oracle::rel(r.sum.preimage(), 1.0) <= 1e-9,
                std::string(g.id()) + " geometric sum " + std::to_string(r.sum.preimage()));
      const StarReal eight = embed_int(g, 8);
      StarReal eighth = embed_int(g, 7);
      const auto s = series_sum(
          g,
          [&](std::size_t) {
            eighth = eighth / eight;
            return eighth;
          },
          1e-13);
      o.require(s.converged && oracle::rel(s.sum.preimage(), 1.0) <= 1e-9, std::string(g.id()) + " sum 7/8^n");
    }
    const StarReal one = star_one(pair.beta);
    const auto d = series_sum(pair.beta, [&](std::size_t) { return one; }, 1e-9, 100);
    o.require(!d.converged, pair.name() + " divergent series reported converged");
    const ScalarAlgebra alg(pair);
    const auto slow = neumann_inverse(alg, StarComplex::from_preimages(pair, 0.01, 0.0), 1e-10, 20);
    o.require(!slow.converged, pair.name() + " truncated Neumann series reported converged");
  }
  const Generator e = builtin_generator("exp");
  const auto blow = series_sum(e, [&](std::size_t) { return StarReal::from_preimage(e, 300.0); }, 1e-9);
  o.require(!blow.converged && blow.status == SeriesStatus::unbounded, "unbounded series not flagged");
  if (o.pass) o.detail = "geometric sums match for every generator of the 4 pairs; divergent fixtures flagged";
  return o;
}

// 10. Golden transcripts and parser round trip.
Outcome cli_contract() {
  Outcome o;
  std::size_t json_cases = 0;
  for (const auto& c : golden::cases()) {
    std::ostringstream out1, err1, out2, err2;
    const int code1 = cli::run_command(c.args, out1, err1);
    const int code2 = cli::run_command(c.args, out2, err2);
    o.require(code1 == code2 && out1.str() == out2.str() && err1.str() == err2.str(), c.name + " not repeatable");
    std::ifstream in(std::string(STARCALC_GOLDEN_DIR) + "/" + c.name + ".txt");
    std::stringstream expected;
    expected << in.rdbuf();
    const std::string actual =
        "exit " + std::to_string(code1) + "\n--- stdout\n" + out1.str() + "--- stderr\n" + err1.str();
    o.require(in && expected.str() == actual, c.name + " differs from its golden transcript");
    json_cases += golden::is_json(c) ? 1 : 0;
  }
  Rng rng(10000);
  ExpressionBounds b;
  b.allow_variable = true;
  for (int n = 0; n < 1000; ++n) {
    const Expr e = detail::random_tree(rng, b.max_depth, b);
    const std::string text = print(e);
    o.require(print(parse_expr(text)) == text, "round trip of " + text);
  }
  if (o.pass)
    o.detail = std::to_string(golden::cases().size()) + " transcripts byte-stable (" + std::to_string(json_cases) +
               " in JSON mode); 1000 trees round-trip";
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"field-oracle equivalence", field_oracle},
      {"C*-identity suites and mutation fixtures", c_star_identity},
      {"norm multiplicativity", norm_laws},
      {"Neumann inversion", neumann},
      {"perturbative inversion and continuity bound", perturbative},
      {"hermitian parts, adjoint inverse, unitaries", hermitian_and_adjoint},
      {"evaluation functionals and closure audits", evaluation_structure},
      {"quotient norm", quotient},
      {"series engine", series},
      {"CLI contract", cli_contract},
  };
  int failures = 0;
  int n = 0;
  for (const auto& [title, run] : criteria) {
    ++n;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << ": " << title << " (" << o.detail << ")\n";
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
