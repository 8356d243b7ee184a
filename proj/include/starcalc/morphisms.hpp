#pragma once

// C(N)-linear maps and (star) homomorphisms, represented extensionally and
// audited by randomized law checks.

#include <cstdint>
#include <functional>
#include <string>

#include <nlohmann/json.hpp>

#include "starcalc/algebra.hpp"
#include "starcalc/grid.hpp"
#include "starcalc/inversion.hpp"
#include "starcalc/report.hpp"

namespace starcalc {

/// What the check operations have established about a map.
struct MorphismFlags {
  bool linear = false;
  bool multiplicative = false;
  bool star = false;
  bool unital = false;
};

template <CNAlgebra Src, CNAlgebra Tgt>
class HomomorphismHandle {
 public:
  using Map = std::function<Element<Tgt>(const Element<Src>&)>;

  HomomorphismHandle(Src source, Tgt target, Map map, std::string name)
      : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)), name_(std::move(name)) {
    if (source_.pair() != target_.pair())
      throw Error(Errc::pair_mismatch, "source and target algebras use different generator pairs");
  }

  const Src& source() const noexcept { return source_; }
  const Tgt& target() const noexcept { return target_; }
  const std::string& name() const noexcept { return name_; }
  Element<Tgt> operator()(const Element<Src>& x) const { return map_(x); }
  const MorphismFlags& flags() const noexcept { return flags_; }

 private:
  template <CNAlgebra S, CNAlgebra T>
  friend AxiomReport homomorphism_check(HomomorphismHandle<S, T>&, std::size_t, double, std::uint64_t);
  template <CNAlgebra S, CNAlgebra T>
  friend AxiomReport star_homomorphism_check(HomomorphismHandle<S, T>&, std::size_t, double, std::uint64_t);

  Src source_;
  Tgt target_;
  Map map_;
  std::string name_;
  MorphismFlags flags_;
};

/// phi(f) = f(at), a map C_N(Omega) -> C(N).
inline HomomorphismHandle<GridAlgebra, ScalarAlgebra> evaluation_functional(const DomainPtr& domain,
                                                                          const StarComplex& at) {
  const std::size_t index = domain->find(at);
  if (index == GridDomain::npos)
    throw Error(Errc::point_not_in_domain, "point " + format_preimages(at) + " is not a grid point");
  GridAlgebra source(domain);
  return HomomorphismHandle<GridAlgebra, ScalarAlgebra>(
      source, ScalarAlgebra(domain->pair()),
      [source, index](const GridFunction& f) {
        if (!same_domain(f.domain(), source.domain()))
          throw Error(Errc::domain_mismatch, "function is not on the functional's domain");
        return f[index];
      },
      "evaluation at " + format_preimages(domain->points()[index]));
}

/// Linearity phi(x + l y) = phi(x) + l phi(y), multiplicativity, and
/// phi(1) = 1 when both sides are unital. Sets the matching flags.
template <CNAlgebra Src, CNAlgebra Tgt>
AxiomReport homomorphism_check(HomomorphismHandle<Src, Tgt>& h, std::size_t trials, double tol, std::uint64_t seed) {
  const auto& src = h.source();
  const auto& tgt = h.target();
  Rng rng(seed);
  LawAudit linear(tol), mult(tol), unital(tol);
  const SampleBounds bounds;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto x = src.sample(rng, bounds);
    const auto y = src.sample(rng, bounds);
    const auto lambda = sample_star_complex(rng, src.pair(), bounds);
    auto inputs = [&] {
      return nlohmann::ordered_json{{"x", src.describe(x)}, {"y", src.describe(y)}, {"lambda", preimage_json(lambda)}};
    };
    linear.record("linear", tgt.residual(h(src.add(x, src.scale(lambda, y))), tgt.add(h(x), tgt.scale(lambda, h(y)))),
                  inputs);
    mult.record("multiplicative", tgt.residual(h(src.mul(x, y)), tgt.mul(h(x), h(y))), inputs);
  }
  if constexpr (UnitalAlgebra<Src> && UnitalAlgebra<Tgt>) {
    unital.record("unital", tgt.residual(h(src.unit()), tgt.unit()), [&] { return src.describe(src.unit()); });
    h.flags_.unital = unital.ok();
  }
  h.flags_.linear = linear.ok();
  h.flags_.multiplicative = mult.ok();

  LawAudit audit(tol);
  for (auto* part : {&linear, &mult, &unital}) audit.merge(*part);
  auto r = std::move(audit).finish("homomorphism", src.carrier() + "->" + tgt.carrier(), src.pair(), trials);
  r.notes.push_back(h.name());
  return r;
}

/// phi(x*) = phi(x)*. Throws Errc::no_involution unless both sides have one.
template <CNAlgebra Src, CNAlgebra Tgt>
AxiomReport star_homomorphism_check(HomomorphismHandle<Src, Tgt>& h, std::size_t trials, double tol,
                                    std::uint64_t seed) {
  if constexpr (!InvolutiveAlgebra<Src> || !InvolutiveAlgebra<Tgt>) {
    throw Error(Errc::no_involution, "star-homomorphism check needs involutions on both algebras");
  } else {
    const auto& src = h.source();
    const auto& tgt = h.target();
    Rng rng(seed);
    LawAudit audit(tol);
    for (std::size_t t = 0; t < trials; ++t) {
      const auto x = src.sample(rng, SampleBounds{});
      audit.record("star-preserving", tgt.residual(h(src.star(x)), tgt.star(h(x))),
                   [&] { return nlohmann::ordered_json{{"x", src.describe(x)}}; });
    }
    h.flags_.star = audit.ok();
    auto r = std::move(audit).finish("star-homomorphism", src.carrier() + "->" + tgt.carrier(), src.pair(), trials);
    r.notes.push_back(h.name());
    return r;
  }
}

/// ||phi(x)|| <= tol on preimage scale.
template <CNAlgebra Src, CNAlgebra Tgt>
bool kernel_membership(const HomomorphismHandle<Src, Tgt>& h, const Element<Src>& x, double tol = 1e-9) {
  return h.target().norm(h(x)).preimage() <= tol;
}

namespace detail {
/// A kernel member built from x: x - phi(x).1, valid for unital maps into C(N).
template <UnitalAlgebra Src>
Element<Src> kernel_projection(const HomomorphismHandle<Src, ScalarAlgebra>& h, const Element<Src>& x) {
  const auto& src = h.source();
  return src.sub(x, src.scale(h(x), src.unit()));
}

/// Random y with ||y|| <= radius (scaled sample).
template <CNAlgebra A>
Element<A> sample_in_ball(const A& alg, Rng& rng, double radius) {
  const auto y = alg.sample(rng, SampleBounds{});
  const double n = alg.norm(y).preimage();
  const double target = radius * (1.0 - rng.unit());
  if (n == 0.0) return y;
  return alg.scale(StarComplex::from_preimages(alg.pair(), target / n, 0.0), y);
}
}  // namespace detail

/// Closure audits for a unital map phi into C(N):
///   kernel-ideal: the kernel is closed under +, scalar . and two-sided absorption;
///   image-subalgebra: phi(A) is closed under +, scalar ., x (via pushforward);
///   kernel-self-adjoint and image-star-closed: the same under the involution.
template <UnitalAlgebra Src>
AxiomReport structure_theorems_check(const HomomorphismHandle<Src, ScalarAlgebra>& h, std::size_t trials, double tol,
                                     std::uint64_t seed) {
  const auto& src = h.source();
  const auto& tgt = h.target();
  Rng rng(seed);
  LawAudit audit(tol);
  auto kernel_distance = [&](const Element<Src>& x) { return tgt.norm(h(x)).preimage(); };
  audit.record("kernel-contains-zero", kernel_distance(src.zero()), [&] { return src.describe(src.zero()); });
  audit.record("image-contains-zero", tgt.residual(h(src.zero()), tgt.zero()), [&] { return src.describe(src.zero()); });
  for (std::size_t t = 0; t < trials; ++t) {
    const auto x = src.sample(rng, SampleBounds{});
    const auto y = src.sample(rng, SampleBounds{});
    const auto a = src.sample(rng, SampleBounds{});
    const auto lambda = sample_star_complex(rng, src.pair());
    const auto k1 = detail::kernel_projection(h, x);
    const auto k2 = detail::kernel_projection(h, y);
    auto inputs = [&] {
      return nlohmann::ordered_json{
          {"x", src.describe(x)}, {"y", src.describe(y)}, {"a", src.describe(a)}, {"lambda", preimage_json(lambda)}};
    };
    audit.record("kernel-ideal:add", kernel_distance(src.add(k1, k2)), inputs);
    audit.record("kernel-ideal:scale", kernel_distance(src.scale(lambda, k1)), inputs);
    audit.record("kernel-ideal:left-absorb", kernel_distance(src.mul(a, k1)), inputs);
    audit.record("kernel-ideal:right-absorb", kernel_distance(src.mul(k1, a)), inputs);
    audit.record("image-subalgebra:add", tgt.residual(tgt.add(h(x), h(y)), h(src.add(x, y))), inputs);
    audit.record("image-subalgebra:scale", tgt.residual(tgt.scale(lambda, h(x)), h(src.scale(lambda, x))), inputs);
    audit.record("image-subalgebra:mul", tgt.residual(tgt.mul(h(x), h(y)), h(src.mul(x, y))), inputs);
    if constexpr (InvolutiveAlgebra<Src>) {
      audit.record("kernel-self-adjoint", kernel_distance(src.star(k1)), inputs);
      audit.record("image-star-closed", tgt.residual(tgt.star(h(x)), h(src.star(x))), inputs);
    }
  }
  auto r = std::move(audit).finish("structure", src.carrier() + "->" + tgt.carrier(), src.pair(), trials);
  r.notes.push_back(h.name());
  if constexpr (!InvolutiveAlgebra<Src>) r.notes.push_back("source has no involution; star clauses skipped");
  return r;
}

/// Character properties of a unital map phi into C(N):
///   phi(1) = 1;
///   phi(x) != 0 for invertible x = 1 - d, ||d|| < 1 (inverse built by the
///   Neumann series), with a strict 1e-9 threshold;
///   ||x|| < 1 implies ||phi(x)|| < 1;
///   ||phi(x)|| <= ||x|| (boundedness with constant 1).
template <UnitalAlgebra Src>
AxiomReport character_check(const HomomorphismHandle<Src, ScalarAlgebra>& h, std::size_t trials, double tol,
                            std::uint64_t seed) {
  constexpr double kNonzeroThreshold = 1e-9;
  const auto& src = h.source();
  const auto& tgt = h.target();
  Rng rng(seed);
  LawAudit audit(tol);
  audit.record("unital", tgt.residual(h(src.unit()), tgt.unit()), [&] { return src.describe(src.unit()); });
  for (std::size_t t = 0; t < trials; ++t) {
    const auto d = detail::sample_in_ball(src, rng, 0.9);
    const auto x = src.sub(src.unit(), d);
    auto inputs = [&] { return nlohmann::ordered_json{{"x", src.describe(x)}}; };
    const auto inv = neumann_inverse(src, x);
    if (!inv.converged) {
      audit.structural_failure("invertible-sample", inputs());
      continue;
    }
    const double phi_norm = tgt.norm(h(x)).preimage();
    if (!(phi_norm > kNonzeroThreshold)) audit.structural_failure("invertible-not-annihilated", inputs());
    audit.record("inverse-preserved", tgt.residual(tgt.mul(h(x), h(inv.inverse)), tgt.unit()), inputs);

    const auto small = detail::sample_in_ball(src, rng, 1.0);
    auto small_inputs = [&] { return nlohmann::ordered_json{{"x", src.describe(small)}}; };
    if (src.norm(small).preimage() < 1.0 && !(tgt.norm(h(small)).preimage() < 1.0))
      audit.structural_failure("contraction", small_inputs());

    const auto any = src.sample(rng, SampleBounds{});
    audit.record("bounded", excess_residual(tgt.norm(h(any)), src.norm(any)),
                 [&] { return nlohmann::ordered_json{{"x", src.describe(any)}}; });
  }
  auto r = std::move(audit).finish("character", src.carrier() + "->" + tgt.carrier(), src.pair(), trials);
  r.notes.push_back(h.name());
  return r;
}

/// A coset f + I_z, identified by its value at z (a complete invariant on a
/// grid).
struct Coset {
  StarComplex value;
  StarReal norm;
};

inline Coset quotient_map(const GridFunction& f, const EvaluationIdeal& ideal) {
  const StarReal n = quotient_norm(f, ideal);
  return Coset{f[ideal.index()], n};
}

inline Coset coset_add(const Coset& a, const Coset& b) {
  const auto v = c_add(a.value, b.value);
  return Coset{v, c_norm(v)};
}
inline Coset coset_scale(const StarComplex& lambda, const Coset& a) {
  const auto v = c_mul(lambda, a.value);
  return Coset{v, c_norm(v)};
}
inline Coset coset_mul(const Coset& a, const Coset& b) {
  const auto v = c_mul(a.value, b.value);
  return Coset{v, c_norm(v)};
}

/// Linearity and multiplicativity of the quotient map on random functions,
/// plus the quotient-norm lower bound ||f + g|| >= ||f + I|| for members g.
inline AxiomReport quotient_map_check(const EvaluationIdeal& ideal, std::size_t trials, double tol, std::uint64_t seed) {
  const GridAlgebra alg(ideal.domain());
  Rng rng(seed);
  LawAudit audit(tol);
  for (std::size_t t = 0; t < trials; ++t) {
    const auto f = alg.sample(rng, SampleBounds{});
    const auto g = alg.sample(rng, SampleBounds{});
    const auto lambda = sample_star_complex(rng, alg.pair());
    const auto member = project_to_ideal(alg.sample(rng, SampleBounds{}), ideal);
    auto inputs = [&] {
      return nlohmann::ordered_json{{"f", alg.describe(f)}, {"g", alg.describe(g)}, {"lambda", preimage_json(lambda)}};
    };
    const auto pf = quotient_map(f, ideal);
    const auto pg = quotient_map(g, ideal);
    audit.record("quotient-linear", residual(coset_add(pf, coset_scale(lambda, pg)).value,
                                             quotient_map(alg.add(f, alg.scale(lambda, g)), ideal).value),
                 inputs);
    audit.record("quotient-multiplicative",
                 residual(coset_mul(pf, pg).value, quotient_map(alg.mul(f, g), ideal).value), inputs);
    audit.record("quotient-norm-lower-bound", excess_residual(pf.norm, alg.norm(alg.add(f, member))), inputs);
  }
  return std::move(audit).finish("quotient-map", alg.carrier(), alg.pair(), trials);
}

/// C_N(Omega) with the reflected involution f*(z) = conj(f(conj z)). It is a
/// valid N-involution when the domain is closed under conjugation, but point
/// evaluation off the real axis does not preserve it.
class ReflectedGridAlgebra : public GridAlgebra {
 public:
  explicit ReflectedGridAlgebra(DomainPtr domain) : GridAlgebra(std::move(domain)) {
    const auto& pts = this->domain()->points();
    mirror_.reserve(pts.size());
    for (const auto& p : pts) {
      const std::size_t j = this->domain()->find(c_conj(p));
      if (j == GridDomain::npos)
        throw Error(Errc::degenerate_parameter, "domain is not closed under conjugation at " + format_preimages(p));
      mirror_.push_back(j);
    }
  }

  std::string carrier() const { return "grid-reflected"; }

  GridFunction star(const GridFunction& f) const {
    std::vector<StarComplex> out;
    out.reserve(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out.push_back(c_conj(f[mirror_[i]]));
    return GridFunction(f.domain(), std::move(out));
  }

 private:
  std::vector<std::size_t> mirror_;
};

}  // namespace starcalc
