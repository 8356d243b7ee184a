#pragma once

// Randomized axiom suites over any C(N)-algebra, seeded samplers, random
// expression trees, and deliberately broken algebras for soundness checks.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>

#include <nlohmann/json.hpp>

#include "starcalc/algebra.hpp"
#include "starcalc/expression.hpp"
#include "starcalc/grid.hpp"
#include "starcalc/polynomial.hpp"
#include "starcalc/report.hpp"
#include "starcalc/rng.hpp"

namespace starcalc {

inline constexpr std::size_t kDefaultTrials = 500;
inline constexpr double kDefaultTolerance = 1e-9;
/// Below this preimage modulus the componentwise inverse law is not checked.
inline constexpr double kInverseLawFloor = 1e-6;

// ---------------------------------------------------------------------------
// Samplers

enum class SampleKind { star_real, star_complex, grid_function, polynomial };

using Sample = std::variant<StarReal, StarComplex, GridFunction, StarPolynomial>;

/// Deterministic in `seed`. Grid samples use `domain`, or the 2x8 disk grid
/// when none is given; star-real samples live over pair.alpha.
inline Sample random_sample(SampleKind kind, const GeneratorPair& pair, const SampleBounds& bounds,
                            std::uint64_t seed, DomainPtr domain = nullptr) {
  bounds.validate(pair);
  Rng rng(seed);
  switch (kind) {
    case SampleKind::star_real: return sample_star_real(rng, pair.alpha, bounds);
    case SampleKind::star_complex: return sample_star_complex(rng, pair, bounds);
    case SampleKind::grid_function:
      if (!domain) domain = make_disk_domain(pair, 2, 8);
      if (domain->pair() != pair) throw Error(Errc::pair_mismatch, "sample domain uses a different generator pair");
      return sample_grid_function(rng, domain, bounds);
    case SampleKind::polynomial: return sample_polynomial(rng, pair, bounds);
  }
  throw Error(Errc::unknown_name, "unknown sample kind");
}

/// Limits that keep random expression trees well conditioned: every divisor
/// has preimage modulus >= min_divisor and every intermediate value has
/// modulus <= max_magnitude (well inside the exp window).
struct ExpressionBounds {
  std::size_t max_depth = 6;
  double literal_radius = 2.0;
  double min_divisor = 0.1;
  double max_magnitude = 500.0;
  bool allow_variable = false;
};

namespace detail {

inline Expr random_tree(Rng& rng, std::size_t depth, const ExpressionBounds& b) {
  if (depth <= 1 || rng.unit() < 0.2) {
    const double pick = rng.unit();
    if (b.allow_variable && pick < 0.25) return Expr::variable();
    if (pick > 0.9) return Expr::make_constant(static_cast<ConstantKind>(rng.integer(0, 2)));
    return Expr::literal(rng.uniform(-b.literal_radius, b.literal_radius),
                         rng.uniform(-b.literal_radius, b.literal_radius));
  }
  static constexpr ExprKind kinds[] = {ExprKind::add,  ExprKind::sub, ExprKind::mul, ExprKind::div,
                                       ExprKind::conj, ExprKind::neg, ExprKind::norm};
  const ExprKind k = kinds[rng.integer(0, 6)];
  if (is_unary(k)) return Expr::unary(k, random_tree(rng, depth - 1, b));
  Expr lhs = random_tree(rng, depth - 1, b);
  Expr rhs = random_tree(rng, depth - 1, b);
  return Expr::binary(k, std::move(lhs), std::move(rhs));
}

/// Classical value if every node respects the bounds.
inline std::optional<std::complex<double>> conditioned_value(const Expr& e, const ExpressionBounds& b,
                                                              const std::optional<std::complex<double>>& z) {
  using C = std::complex<double>;
  std::vector<C> kids;
  for (const auto& c : e.children) {
    auto v = conditioned_value(c, b, z);
    if (!v) return std::nullopt;
    kids.push_back(*v);
  }
  if (e.kind == ExprKind::div && std::abs(kids[1]) < b.min_divisor) return std::nullopt;
  Expr shallow = e;
  for (std::size_t i = 0; i < kids.size(); ++i) shallow.children[i] = Expr::literal(kids[i].real(), kids[i].imag());
  const C v = eval_classical(shallow, z);
  if (!(std::abs(v) <= b.max_magnitude)) return std::nullopt;
  return v;
}

}  // namespace detail

/// Random tree of depth <= bounds.max_depth, rejection-sampled until it is
/// conditioned for every z on the disk points supplied (or, without a
/// variable, on its own).
inline Expr random_expression(Rng& rng, const ExpressionBounds& bounds = {},
                              const std::vector<std::complex<double>>& z_values = {}) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Expr e = detail::random_tree(rng, bounds.max_depth, bounds);
    bool ok = true;
    if (uses_variable(e)) {
      for (const auto& z : z_values)
        if (!detail::conditioned_value(e, bounds, z)) {
          ok = false;
          break;
        }
      ok = ok && !z_values.empty();
    } else {
      ok = detail::conditioned_value(e, bounds, std::nullopt).has_value();
    }
    if (ok) return e;
  }
  return Expr::literal(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
}

// ---------------------------------------------------------------------------
// Suites

enum class Suite { vector_space, norm, normed_algebra, involution, c_star, field };

inline std::string_view to_string(Suite s) {
  switch (s) {
    case Suite::vector_space: return "vector-space";
    case Suite::norm: return "norm";
    case Suite::normed_algebra: return "normed-algebra";
    case Suite::involution: return "involution";
    case Suite::c_star: return "c-star";
    case Suite::field: return "field";
  }
  return "?";
}

inline Suite parse_suite(std::string_view name) {
  for (Suite s : {Suite::vector_space, Suite::norm, Suite::normed_algebra, Suite::involution, Suite::c_star,
                  Suite::field})
    if (to_string(s) == name) return s;
  throw Error(Errc::unknown_name, "unknown suite '" + std::string(name) +
                                      "' (expected vector-space, norm, normed-algebra, involution, c-star or field)");
}

namespace detail {

template <CNAlgebra A>
struct SuiteContext {
  const A& alg;
  Rng rng;
  LawAudit audit;
  SampleBounds bounds;

  Element<A> element() { return alg.sample(rng, bounds); }
  StarComplex scalar() { return sample_star_complex(rng, alg.pair(), bounds); }
};

template <CNAlgebra A>
void vector_space_laws(SuiteContext<A>& s, std::size_t trials) {
  const auto& a = s.alg;
  const auto k = constants(a.pair());
  constexpr bool scalar_carrier = std::is_same_v<Element<A>, StarComplex>;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto x = s.element(), y = s.element(), w = s.element();
    const auto l = s.scalar(), m = s.scalar();
    auto in = [&] {
      return nlohmann::ordered_json{{"x", a.describe(x)},       {"y", a.describe(y)},       {"w", a.describe(w)},
                                    {"lambda", preimage_json(l)}, {"mu", preimage_json(m)}};
    };
    s.audit.record("add-commutative", a.residual(a.add(x, y), a.add(y, x)), in);
    s.audit.record("add-associative", a.residual(a.add(a.add(x, y), w), a.add(x, a.add(y, w))), in);
    s.audit.record("add-identity", a.residual(a.add(x, a.zero()), x), in);
    s.audit.record("add-inverse", a.residual(a.add(x, a.sub(a.zero(), x)), a.zero()), in);
    s.audit.record("scale-distributes-over-add", a.residual(a.scale(l, a.add(x, y)), a.add(a.scale(l, x), a.scale(l, y))),
                   in);
    s.audit.record("scalar-sum-distributes", a.residual(a.scale(c_add(l, m), x), a.add(a.scale(l, x), a.scale(m, x))),
                   in);
    s.audit.record("scale-compatible", a.residual(a.scale(c_mul(l, m), x), a.scale(l, a.scale(m, x))), in);
    s.audit.record("scale-identity", a.residual(a.scale(k.one, x), x), in);
    if constexpr (scalar_carrier) {
      // Componentwise inverse (alpha(u1/|u|^2), beta(-u2/|u|^2)).
      const auto u = x.preimage();
      if (std::abs(u) >= kInverseLawFloor) {
        const double d = std::norm(u);
        const auto inv = StarComplex::from_preimages(a.pair(), u.real() / d, -u.imag() / d);
        s.audit.record("multiplicative-inverse", std::max(a.residual(c_mul(x, inv), k.one), a.residual(c_mul(inv, x), k.one)),
                       in);
      }
    }
  }
  if constexpr (!scalar_carrier)
    s.audit.note("componentwise multiplicative-inverse law is defined on C(N) itself only; skipped for the " +
                 a.carrier() + " carrier");
}

template <CNAlgebra A>
void norm_laws(SuiteContext<A>& s, std::size_t trials) {
  const auto& a = s.alg;
  s.audit.record("norm-of-zero", std::abs(a.norm(a.zero()).preimage()), [&] { return a.describe(a.zero()); });
  for (std::size_t t = 0; t < trials; ++t) {
    const auto x = s.element(), y = s.element();
    const auto l = s.scalar();
    auto in = [&] {
      return nlohmann::ordered_json{{"x", a.describe(x)}, {"y", a.describe(y)}, {"lambda", preimage_json(l)}};
    };
    const StarReal nx = a.norm(x);
    if (nx.preimage() < 0.0) s.audit.structural_failure("norm-nonnegative", in());
    if (nx.preimage() == 0.0 && a.residual(x, a.zero()) > 0.0) s.audit.structural_failure("norm-definite", in());
    s.audit.record("norm-homogeneous", real_residual(a.norm(a.scale(l, x)), c_norm(l) * nx), in);
    s.audit.record("triangle", excess_residual(a.norm(a.add(x, y)), nx + a.norm(y)), in);
  }
}

template <CNAlgebra A>
void normed_algebra_laws(SuiteContext<A>& s, std::size_t trials) {
  const auto& a = s.alg;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto x = s.element(), y = s.element(), w = s.element();
    const auto l = s.scalar();
    auto in = [&] {
      return nlohmann::ordered_json{
          {"x", a.describe(x)}, {"y", a.describe(y)}, {"w", a.describe(w)}, {"lambda", preimage_json(l)}};
    };
    s.audit.record("mul-associative", a.residual(a.mul(a.mul(x, y), w), a.mul(x, a.mul(y, w))), in);
    s.audit.record("left-distributive", a.residual(a.mul(x, a.add(y, w)), a.add(a.mul(x, y), a.mul(x, w))), in);
    s.audit.record("right-distributive", a.residual(a.mul(a.add(x, y), w), a.add(a.mul(x, w), a.mul(y, w))), in);
    s.audit.record("scale-mul-left", a.residual(a.mul(a.scale(l, x), y), a.scale(l, a.mul(x, y))), in);
    s.audit.record("scale-mul-right", a.residual(a.mul(x, a.scale(l, y)), a.scale(l, a.mul(x, y))), in);
    s.audit.record("submultiplicative", excess_residual(a.norm(a.mul(x, y)), a.norm(x) * a.norm(y)), in);
  }
  if constexpr (UnitalAlgebra<A>) {
    const auto one = a.unit();
    Rng& rng = s.rng;
    const auto x = a.sample(rng, s.bounds);
    auto in = [&] { return nlohmann::ordered_json{{"x", a.describe(x)}}; };
    s.audit.record("unit", std::max(a.residual(a.mul(one, x), x), a.residual(a.mul(x, one), x)), in);
  }
}

template <CNAlgebra A>
void involution_laws(SuiteContext<A>& s, std::size_t trials) {
  const auto& a = s.alg;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto x = s.element(), y = s.element();
    const auto l = s.scalar();
    auto in = [&] {
      return nlohmann::ordered_json{{"x", a.describe(x)}, {"y", a.describe(y)}, {"lambda", preimage_json(l)}};
    };
    s.audit.record("star-additive", a.residual(a.star(a.add(x, y)), a.add(a.star(x), a.star(y))), in);
    s.audit.record("star-conjugate-linear", a.residual(a.star(a.scale(l, x)), a.scale(c_conj(l), a.star(x))), in);
    s.audit.record("star-reverses-products", a.residual(a.star(a.mul(x, y)), a.mul(a.star(y), a.star(x))), in);
    s.audit.record("star-involutive", a.residual(a.star(a.star(x)), x), in);
    s.audit.record("star-isometric", real_residual(a.norm(a.star(x)), a.norm(x)), in);
  }
}

template <CNAlgebra A>
void c_star_laws(SuiteContext<A>& s, std::size_t trials) {
  involution_laws(s, trials);
  const auto& a = s.alg;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto x = s.element();
    s.audit.record("c-star-identity", real_residual(a.norm(a.mul(a.star(x), x)), square(a.norm(x))),
                   [&] { return nlohmann::ordered_json{{"x", a.describe(x)}}; });
  }
  if constexpr (UnitalAlgebra<A>) {
    s.audit.record("unit-norm", real_residual(a.norm(a.unit()), star_one(a.pair().beta)),
                   [&] { return a.describe(a.unit()); });
  }
}

template <CNAlgebra A>
void field_laws(SuiteContext<A>& s, std::size_t trials) {
  const auto& a = s.alg;
  const auto k = constants(a.pair());
  s.audit.record("i-squared", residual(c_mul(k.i_unit, k.i_unit), c_neg(k.one)), [] { return nullptr; });
  for (std::size_t t = 0; t < trials; ++t) {
    const StarComplex x = s.element(), y = s.element(), w = s.element();
    auto in = [&] {
      return nlohmann::ordered_json{{"x", preimage_json(x)}, {"y", preimage_json(y)}, {"w", preimage_json(w)}};
    };
    s.audit.record("add-commutative", residual(c_add(x, y), c_add(y, x)), in);
    s.audit.record("add-associative", residual(c_add(c_add(x, y), w), c_add(x, c_add(y, w))), in);
    s.audit.record("mul-commutative", residual(c_mul(x, y), c_mul(y, x)), in);
    s.audit.record("mul-associative", residual(c_mul(c_mul(x, y), w), c_mul(x, c_mul(y, w))), in);
    s.audit.record("distributive", residual(c_mul(x, c_add(y, w)), c_add(c_mul(x, y), c_mul(x, w))), in);
    s.audit.record("add-identity", residual(c_add(x, k.zero), x), in);
    s.audit.record("mul-identity", residual(c_mul(x, k.one), x), in);
    s.audit.record("add-inverse", residual(c_add(x, c_neg(x)), k.zero), in);
    if (std::abs(x.preimage()) >= kInverseLawFloor)
      s.audit.record("mul-inverse", residual(c_mul(x, c_div(k.one, x)), k.one), in);
  }
}

}  // namespace detail

/// Runs every law of `suite` on `trials` random tuples. Throws
/// Errc::unsupported_suite when the carrier lacks what the suite needs.
template <CNAlgebra A>
AxiomReport run_axiom_suite(Suite suite, const A& alg, std::size_t trials = kDefaultTrials,
                            double tol = kDefaultTolerance, std::uint64_t seed = 0) {
  detail::SuiteContext<A> s{alg, Rng(seed), LawAudit(tol), SampleBounds{}};
  switch (suite) {
    case Suite::vector_space: detail::vector_space_laws(s, trials); break;
    case Suite::norm: detail::norm_laws(s, trials); break;
    case Suite::normed_algebra: detail::normed_algebra_laws(s, trials); break;
    case Suite::involution:
    case Suite::c_star:
      if constexpr (InvolutiveAlgebra<A>) {
        if (suite == Suite::involution)
          detail::involution_laws(s, trials);
        else
          detail::c_star_laws(s, trials);
      } else {
        throw Error(Errc::unsupported_suite,
                    std::string(to_string(suite)) + " suite needs an N-involution; the " + alg.carrier() +
                        " carrier has none");
      }
      break;
    case Suite::field:
      if constexpr (std::is_same_v<Element<A>, StarComplex>) {
        detail::field_laws(s, trials);
      } else {
        throw Error(Errc::unsupported_suite, "field suite applies to the scalar carrier only");
      }
      break;
  }
  return std::move(s.audit).finish(std::string(to_string(suite)), alg.carrier(), alg.pair(), trials);
}

// ---------------------------------------------------------------------------
// Mutation fixtures: each breaks one law on purpose.

/// Involution without the conjugation sign: x* = x.
template <CNAlgebra A>
class BrokenInvolution : public A {
 public:
  using A::A;
  explicit BrokenInvolution(A base) : A(std::move(base)) {}
  std::string carrier() const { return A::carrier() + "+broken-involution"; }
  Element<A> star(const Element<A>& x) const { return x; }
};

/// Norm identically 1.
template <CNAlgebra A>
class BrokenNorm : public A {
 public:
  using A::A;
  explicit BrokenNorm(A base) : A(std::move(base)) {}
  std::string carrier() const { return A::carrier() + "+broken-norm"; }
  StarReal norm(const Element<A>&) const { return star_one(A::pair().beta); }
};

}  // namespace starcalc
