#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "starcalc/starcalc.hpp"

using namespace starcalc;

namespace {

const GeneratorPair kIdId = pair_from_names("identity", "identity");
const GeneratorPair kIdExp = pair_from_names("identity", "exp");

StarComplex pre(const GeneratorPair& p, double a, double b) { return StarComplex::from_preimages(p, a, b); }

// Scalars with an involution but no unit, for the no-unit error path.
struct NonUnitalScalars : ScalarAlgebra {
  using ScalarAlgebra::ScalarAlgebra;
  void unit() const = delete;
};
static_assert(InvolutiveAlgebra<NonUnitalScalars>);
static_assert(!UnitalAlgebra<NonUnitalScalars>);
static_assert(!InvolutiveAlgebra<PolynomialAlgebra>);
static_assert(UnitalAlgebra<GridAlgebra> && InvolutiveAlgebra<GridAlgebra>);

// ---------------------------------------------------------------------------
// Domains and grid functions

TEST(Grid, DiskDomainShape) {
  const auto d = make_disk_domain(kIdId, 1, 4);
  ASSERT_EQ(d->size(), 5u);
  EXPECT_EQ(d->points()[0].preimage(), oracle::C(0, 0));
  for (std::size_t i = 1; i < 5; ++i) EXPECT_NEAR(std::abs(d->points()[i].preimage()), 0.5, 1e-15);

  const auto e = make_disk_domain(kIdExp, 2, 8);
  ASSERT_EQ(e->size(), 17u);
  for (const auto& p : e->points()) {
    EXPECT_GT(p.b().image(), 0.0);
    EXPECT_LE(c_norm(p).preimage(), 0.5 + 1e-12);
  }
}

TEST(Grid, DomainValidation) {
  EXPECT_THROW(make_disk_domain(kIdId, 0, 4), Error);
  EXPECT_THROW(make_disk_domain(kIdId, 2, 2), Error);
  const auto origin = pre(kIdId, 0, 0);
  try {
    GridDomain::create(kIdId, {origin, pre(kIdId, 0.6, 0)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::domain);
  }
  EXPECT_THROW(GridDomain::create(kIdId, {origin, pre(kIdId, 0.1, 0), pre(kIdId, 0.1, 1e-12)}), Error);
  EXPECT_THROW(GridDomain::create(kIdId, {pre(kIdId, 0.1, 0)}), Error);
  EXPECT_NO_THROW(GridDomain::create(kIdId, {origin, pre(kIdId, 0.5 + 5e-13, 0)}));
}

TEST(Grid, PointwiseOperations) {
  const auto d = make_disk_domain(kIdExp, 2, 8);
  const auto k = constants(kIdExp);
  const auto one = GridFunction::constant(d, k.one);
  const auto two = fn_add(one, one);
  for (const auto& v : two.values()) EXPECT_LE(residual(v, pre(kIdExp, 2, 0)), 1e-15);

  const auto id = GridFunction::coordinate(d);
  const auto inv = fn_involution(id);
  for (std::size_t i = 0; i < d->size(); ++i) EXPECT_LE(residual(inv[i], c_conj(d->points()[i])), 1e-15);

  const auto scaled = fn_scale(k.i_unit, one);
  for (const auto& v : scaled.values()) EXPECT_LE(residual(v, k.i_unit), 1e-15);

  const auto other = make_disk_domain(kIdExp, 1, 8);
  try {
    fn_add(one, GridFunction::constant(other, k.one));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::domain_mismatch);
  }
  // Structurally equal domains built separately are interchangeable.
  EXPECT_NO_THROW(fn_add(one, GridFunction::constant(make_disk_domain(kIdExp, 2, 8), k.one)));
}

TEST(Grid, SupNorm) {
  for (const auto& p : kStandardPairs) {
    const auto d = make_disk_domain(p, 1, 8);
    EXPECT_NEAR(sup_norm(GridFunction::coordinate(d)).preimage(), 0.5, 1e-12) << p.name();
    EXPECT_EQ(sup_norm(GridFunction::constant(d, constants(p).zero)).preimage(), 0.0);
  }
  const auto d = make_disk_domain(kIdId, 1, 4);
  const GridAlgebra a(d);
  EXPECT_NEAR(sup_norm(a.add(GridFunction::coordinate(d), a.unit())).preimage(), 1.5, 1e-15);
}

TEST(Grid, NormIsSubmultiplicativeAndMultiplicativeOnConstants) {
  Rng rng(51);
  for (const auto& p : kStandardPairs) {
    const GridAlgebra a(make_disk_domain(p, 2, 8));
    for (int n = 0; n < 200; ++n) {
      const auto f = a.sample(rng, {}), g = a.sample(rng, {});
      EXPECT_LE(a.norm(a.mul(f, g)).preimage(), (a.norm(f) * a.norm(g)).preimage() * (1 + 1e-12));
      const auto cf = GridFunction::constant(a.domain(), sample_star_complex(rng, p));
      const auto cg = GridFunction::constant(a.domain(), sample_star_complex(rng, p));
      EXPECT_LE(real_residual(a.norm(a.mul(cf, cg)), a.norm(cf) * a.norm(cg)), 1e-9);
    }
  }
}

TEST(Grid, CStarIdentityAndIsometry) {
  Rng rng(52);
  for (const auto& p : kStandardPairs) {
    const GridAlgebra a(make_disk_domain(p, 2, 8));
    for (int n = 0; n < 200; ++n) {
      const auto f = a.sample(rng, {});
      EXPECT_LE(real_residual(a.norm(a.mul(a.star(f), f)), square(a.norm(f))), 1e-9);
      EXPECT_LE(real_residual(a.norm(a.star(f)), a.norm(f)), 1e-12);
    }
  }
}

// ---------------------------------------------------------------------------
// Polynomials

TEST(Polynomial, Evaluation) {
  for (const auto& p : kStandardPairs) {
    const auto one = StarPolynomial::from_preimages(p, {1.0});
    EXPECT_LE(residual(poly_eval(one, pre(p, 0.3, 0.1)), constants(p).one), 1e-15);
    const auto shift = StarPolynomial::from_preimages(p, {1.0, 1.0});
    EXPECT_LE(residual(poly_eval(shift, constants(p).zero), constants(p).one), 1e-15);
  }
  const auto q = StarPolynomial::from_preimages(kIdId, {1.0, 2.0, 3.0});
  EXPECT_EQ(poly_eval(q, pre(kIdId, 2, 0)).preimage(), oracle::C(17, 0));
}

TEST(Polynomial, HornerMatchesPowerSum) {
  Rng rng(53);
  for (const auto& p : kStandardPairs)
    for (int n = 0; n < 300; ++n) {
      const auto poly = sample_polynomial(rng, p, SampleBounds{1.5, 5});
      const auto z = sample_in_disk(rng, p, 1.0);
      EXPECT_LE(residual(poly_eval(poly, z), poly_eval_naive(poly, z)), 1e-9);
    }
}

TEST(Polynomial, TrimsTrailingZeros) {
  const auto p = StarPolynomial::from_preimages(kIdExp, {1.0, 2.0, 0.0, 1e-13});
  EXPECT_EQ(p.degree(), 1u);
  EXPECT_EQ(StarPolynomial::from_preimages(kIdExp, {0.0, 0.0}).coefficients().size(), 1u);
  EXPECT_EQ(StarPolynomial(kIdExp, {}).coefficients().size(), 1u);
}

TEST(Polynomial, SamplingOnTheGrid) {
  const auto d = make_disk_domain(kIdId, 2, 8);
  const auto ident = poly_to_grid(StarPolynomial::from_preimages(kIdId, {0.0, 1.0}), d);
  EXPECT_EQ(grid_residual(ident, GridFunction::coordinate(d)), 0.0);
  const auto shift = poly_to_grid(StarPolynomial::from_preimages(kIdId, {1.0, 1.0}), d);
  for (std::size_t i = 0; i < d->size(); ++i)
    EXPECT_LE(oracle::rel(shift[i].preimage(), d->points()[i].preimage() + 1.0), 1e-15);

  Rng rng(54);
  for (int n = 0; n < 50; ++n) {
    const auto a = sample_polynomial(rng, kIdId), b = sample_polynomial(rng, kIdId);
    EXPECT_LE(grid_residual(poly_to_grid(poly_add(a, b), d), fn_add(poly_to_grid(a, d), poly_to_grid(b, d))), 1e-12);
    EXPECT_LE(grid_residual(poly_to_grid(poly_mul(a, b), d), fn_mul(poly_to_grid(a, d), poly_to_grid(b, d))), 1e-12);
  }
  EXPECT_THROW(poly_to_grid(StarPolynomial::from_preimages(kIdExp, {1.0}), d), Error);
}

TEST(Polynomial, FitResidualSeparatesPolynomials) {
  Rng rng(55);
  const auto d = make_disk_domain(kIdExp, 2, 8);
  for (int n = 0; n < 50; ++n) {
    const auto f = poly_to_grid(sample_polynomial(rng, kIdExp, SampleBounds{2.0, 6}), d);
    EXPECT_LE(polynomial_fit_residual(f, 6), 1e-10);
  }
  EXPECT_GT(polynomial_fit_residual(fn_involution(GridFunction::coordinate(d)), 6), 0.1);
}

// ---------------------------------------------------------------------------
// Ideals and quotient norms

TEST(Ideal, Membership) {
  const auto d = make_disk_domain(kIdExp, 2, 8);
  const auto k = constants(kIdExp);
  const EvaluationIdeal at0(d, k.zero);
  EXPECT_TRUE(ideal_membership(at0, GridFunction::coordinate(d)));
  EXPECT_FALSE(ideal_membership(at0, GridFunction::constant(d, k.one)));
  EXPECT_THROW(EvaluationIdeal(d, pre(kIdExp, 0.123, 0)), Error);

  Rng rng(56);
  const GridAlgebra a(d);
  for (int n = 0; n < 200; ++n) {
    const EvaluationIdeal ideal(d, d->points()[rng.integer(0, 16)]);
    const auto g = project_to_ideal(a.sample(rng, {}), ideal);
    const auto f = a.sample(rng, {});
    EXPECT_TRUE(ideal_membership(ideal, g));
    EXPECT_TRUE(ideal_membership(ideal, a.mul(f, g)));
    EXPECT_TRUE(ideal_membership(ideal, a.mul(g, f)));
  }
}

TEST(Ideal, QuotientNorm) {
  const auto d = make_disk_domain(kIdExp, 2, 8);
  const auto k = constants(kIdExp);
  const GridAlgebra a(d);
  Rng rng(57);
  for (int n = 0; n < 200; ++n) {
    const EvaluationIdeal ideal(d, d->points()[rng.integer(0, 16)]);
    const auto f = a.sample(rng, {});
    const auto g = project_to_ideal(a.sample(rng, {}), ideal);
    const auto q = quotient_norm(f, ideal);
    EXPECT_EQ(quotient_norm(g, ideal).preimage(), 0.0);
    EXPECT_NEAR(quotient_norm(GridFunction::constant(d, k.one), ideal).preimage(), 1.0, 1e-15);
    EXPECT_GE(a.norm(a.add(f, g)).preimage(), q.preimage() - 1e-12);
    // The witness attains the infimum.
    const auto w = quotient_witness(f, ideal);
    EXPECT_TRUE(ideal_membership(ideal, w));
    EXPECT_LE(real_residual(a.norm(a.add(f, w)), q), 1e-12);
    // Submultiplicative.
    const auto h = a.sample(rng, {});
    EXPECT_LE(quotient_norm(a.mul(f, h), ideal).preimage(),
              (q * quotient_norm(h, ideal)).preimage() + 1e-12);
  }
}

// ---------------------------------------------------------------------------
// Classification and hermitian parts

TEST(Classify, GridExamples) {
  Rng rng(58);
  for (const auto& p : kStandardPairs) {
    const auto d = make_disk_domain(p, 2, 8);
    const GridAlgebra a(d);
    const auto real_valued =
        GridFunction::sample(d, [&](const StarComplex&) { return pre(p, rng.uniform(-2, 2), 0.0); });
    EXPECT_TRUE(classify_element(a, real_valued).hermitian);
    const auto f = a.sample(rng, {});
    const auto c = classify_element(a, f);
    EXPECT_TRUE(c.normal);
    EXPECT_FALSE(c.hermitian);
    const auto unit_mod = GridFunction::sample(d, [&](const StarComplex&) { return sample_unit_modulus(rng, p); });
    EXPECT_TRUE(classify_element(a, unit_mod).unitary);
    EXPECT_FALSE(classify_element(a, a.scale(pre(p, 2, 0), unit_mod)).unitary);
  }
}

TEST(Classify, MissingCapabilities) {
  const auto d = make_disk_domain(kIdId, 1, 4);
  try {
    classify_element(PolynomialAlgebra(d), StarPolynomial::from_preimages(kIdId, {1.0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::no_involution);
  }
  try {
    classify_element(NonUnitalScalars(kIdId), pre(kIdId, 1, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::no_unit);
  }
  EXPECT_THROW(hermitian_parts(PolynomialAlgebra(d), StarPolynomial::from_preimages(kIdId, {1.0})), Error);
}

TEST(HermitianParts, ScalarAndGridExamples) {
  const ScalarAlgebra s(kIdId);
  const auto [u, v] = hermitian_parts(s, pre(kIdId, 3, 4));
  EXPECT_LE(oracle::rel(u.preimage(), oracle::C(3, 0)), 1e-15);
  EXPECT_LE(oracle::rel(v.preimage(), oracle::C(4, 0)), 1e-15);

  const ScalarAlgebra se(kIdExp);
  const auto h = pre(kIdExp, -1.25, 0);
  const auto [hu, hv] = hermitian_parts(se, h);
  EXPECT_LE(residual(hu, h), 1e-15);
  EXPECT_LE(std::abs(hv.preimage()), 1e-15);

  const auto d = make_disk_domain(kIdId, 2, 8);
  const GridAlgebra g(d);
  const auto [gu, gv] = hermitian_parts(g, GridFunction::coordinate(d));
  for (std::size_t i = 0; i < d->size(); ++i) {
    const auto z = d->points()[i].preimage();
    EXPECT_NEAR(gu[i].preimage().real(), z.real(), 1e-15);
    EXPECT_NEAR(gv[i].preimage().real(), z.imag(), 1e-15);
    EXPECT_EQ(gu[i].preimage().imag(), 0.0);
    EXPECT_EQ(gv[i].preimage().imag(), 0.0);
  }
}

TEST(HermitianParts, ReconstructionProperty) {
  Rng rng(59);
  for (const auto& p : kStandardPairs) {
    const ScalarAlgebra s(p);
    const GridAlgebra g(make_disk_domain(p, 2, 8));
    for (int n = 0; n < 200; ++n) {
      const auto x = s.sample(rng, {});
      const auto [u, v] = hermitian_parts(s, x);
      EXPECT_TRUE(classify_element(s, u).hermitian && classify_element(s, v).hermitian);
      EXPECT_LE(s.residual(recombine_parts(s, u, v), x), 1e-9);
      const auto f = g.sample(rng, {});
      const auto [fu, fv] = hermitian_parts(g, f);
      EXPECT_TRUE(classify_element(g, fu).hermitian && classify_element(g, fv).hermitian);
      EXPECT_LE(g.residual(recombine_parts(g, fu, fv), f), 1e-9);
    }
  }
}

TEST(HermitianParts, InvolutionLawsWithScalars) {
  Rng rng(60);
  for (const auto& p : kStandardPairs) {
    const GridAlgebra g(make_disk_domain(p, 2, 8));
    for (int n = 0; n < 100; ++n) {
      const auto f = g.sample(rng, {}), h = g.sample(rng, {});
      const auto l = sample_star_complex(rng, p);
      EXPECT_LE(g.residual(g.star(g.scale(l, f)), g.scale(c_conj(l), g.star(f))), 1e-9);
      EXPECT_LE(g.residual(g.star(g.mul(f, h)), g.mul(g.star(h), g.star(f))), 1e-9);
    }
  }
}

// ---------------------------------------------------------------------------
// Closure audits

TEST(Closure, EvaluationIdealIsSelfAdjoint) {
  for (const auto& p : kStandardPairs) {
    const auto d = make_disk_domain(p, 2, 8);
    const GridAlgebra a(d);
    const EvaluationIdeal ideal(d, d->points()[5]);
    const auto r = subalgebra_closure_check(
        a, [&](const GridFunction& f) { return std::abs(f[ideal.index()].preimage()); },
        [&](Rng& rng) { return project_to_ideal(a.sample(rng, {}), ideal); }, 200, 1e-9, 61, true);
    EXPECT_TRUE(r.passed) << p.name() << " " << to_json(r).dump();
  }
}

TEST(Closure, PolynomialsFormASubalgebra) {
  for (const auto& p : kStandardPairs) {
    const auto d = make_disk_domain(p, 2, 8);
    const GridAlgebra a(d);
    const auto r = subalgebra_closure_check(
        a, [](const GridFunction& f) { return polynomial_fit_residual(f, 6); },
        [&](Rng& rng) { return poly_to_grid(sample_polynomial(rng, p, SampleBounds{1.0, 3}), d); }, 200, 1e-9, 62);
    EXPECT_TRUE(r.passed) << p.name() << " " << to_json(r).dump();
  }
}

TEST(Closure, UnitBallIsNotClosedUnderAddition) {
  const auto d = make_disk_domain(kIdExp, 2, 8);
  const GridAlgebra a(d);
  auto outside = [&](const GridFunction& f) { return std::max(0.0, a.norm(f).preimage() - 1.0); };
  const auto one = a.unit();
  EXPECT_EQ(outside(one), 0.0);
  EXPECT_GT(outside(a.add(one, one)), 0.5);
  const auto r = subalgebra_closure_check(a, outside, [&](Rng&) { return one; }, 10, 1e-9, 63);
  EXPECT_FALSE(r.passed);
  ASSERT_TRUE(r.counterexample.has_value());
  EXPECT_EQ((*r.counterexample)["law"], "closed-under-add");
}

// ---------------------------------------------------------------------------
// Serialization

TEST(GridJson, RoundTrip) {
  const auto d = make_disk_domain(kIdExp, 2, 8);
  Rng rng(64);
  const auto f = sample_grid_function(rng, d);
  const auto doc = grid_to_json(f);
  EXPECT_EQ(doc["format"], "starcalc-grid");
  EXPECT_EQ(doc["version"], 1);
  const auto back = grid_from_json(nlohmann::json::parse(doc.dump()));
  EXPECT_TRUE(same_domain(back.domain(), d));
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_EQ(back[i].a().image(), f[i].a().image());
    EXPECT_EQ(back[i].b().image(), f[i].b().image());
  }
  EXPECT_EQ(doc["sup_norm"]["image"].get<double>(), sup_norm(f).image());
}

TEST(GridJson, RejectsMalformedDocuments) {
  auto doc = nlohmann::json::parse(grid_to_json(GridFunction::coordinate(make_disk_domain(kIdId, 1, 4))).dump());
  auto bad_version = doc;
  bad_version["version"] = 2;
  EXPECT_THROW(grid_from_json(bad_version), Error);
  auto bad_values = doc;
  bad_values["values"].erase(0);
  EXPECT_THROW(grid_from_json(bad_values), Error);
  auto bad_pair = doc;
  bad_pair["pair"]["beta"] = "log";
  EXPECT_THROW(grid_from_json(bad_pair), Error);
  EXPECT_THROW(grid_from_json(nlohmann::json::array()), Error);
}

}  // namespace
