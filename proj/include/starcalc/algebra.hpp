#pragma once

// C(N)-algebras as a compile-time interface. A carrier type exposes the
// vector-space operations over C(N), an N-multiplication and a beta-valued
// norm; a unit and an N-involution are optional capabilities.

#include <concepts>
#include <cstdint>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "starcalc/error.hpp"
#include "starcalc/report.hpp"
#include "starcalc/rng.hpp"
#include "starcalc/star_complex.hpp"

namespace starcalc {

template <class A>
concept CNAlgebra = requires(const A& alg, const typename A::element_type& x, const StarComplex& lambda, Rng& rng,
                             const SampleBounds& bounds) {
  { alg.carrier() } -> std::convertible_to<std::string>;
  { alg.pair() } -> std::convertible_to<GeneratorPair>;
  { alg.zero() } -> std::same_as<typename A::element_type>;
  { alg.add(x, x) } -> std::same_as<typename A::element_type>;
  { alg.sub(x, x) } -> std::same_as<typename A::element_type>;
  { alg.scale(lambda, x) } -> std::same_as<typename A::element_type>;
  { alg.mul(x, x) } -> std::same_as<typename A::element_type>;
  { alg.norm(x) } -> std::same_as<StarReal>;
  // Scaled preimage distance between elements, independent of norm().
  { alg.residual(x, x) } -> std::convertible_to<double>;
  { alg.describe(x) } -> std::convertible_to<nlohmann::ordered_json>;
  { alg.sample(rng, bounds) } -> std::same_as<typename A::element_type>;
};

template <class A>
concept UnitalAlgebra = CNAlgebra<A> && requires(const A& alg) {
  { alg.unit() } -> std::same_as<typename A::element_type>;
};

template <class A>
concept InvolutiveAlgebra = CNAlgebra<A> && requires(const A& alg, const typename A::element_type& x) {
  { alg.star(x) } -> std::same_as<typename A::element_type>;
};

template <CNAlgebra A>
using Element = typename A::element_type;

/// C(N) over itself: the scalar carrier.
class ScalarAlgebra {
 public:
  using element_type = StarComplex;

  explicit ScalarAlgebra(GeneratorPair pair) : pair_(pair) {}

  std::string carrier() const { return "scalar"; }
  GeneratorPair pair() const { return pair_; }
  StarComplex zero() const { return constants(pair_).zero; }
  StarComplex unit() const { return constants(pair_).one; }
  StarComplex add(const StarComplex& x, const StarComplex& y) const { return c_add(x, y); }
  StarComplex sub(const StarComplex& x, const StarComplex& y) const { return c_sub(x, y); }
  StarComplex scale(const StarComplex& l, const StarComplex& x) const { return c_mul(l, x); }
  StarComplex mul(const StarComplex& x, const StarComplex& y) const { return c_mul(x, y); }
  StarComplex star(const StarComplex& x) const { return c_conj(x); }
  StarReal norm(const StarComplex& x) const { return c_norm(x); }
  double residual(const StarComplex& x, const StarComplex& y) const { return starcalc::residual(x, y); }
  nlohmann::ordered_json describe(const StarComplex& x) const { return preimage_json(x); }
  StarComplex sample(Rng& rng, const SampleBounds& bounds) const { return sample_star_complex(rng, pair_, bounds); }

 private:
  GeneratorPair pair_;
};

/// Preimage of the norm of x - y.
template <CNAlgebra A>
double norm_distance(const A& alg, const Element<A>& x, const Element<A>& y) {
  return alg.norm(alg.sub(x, y)).preimage();
}

/// Scaled difference of two beta-values.
inline double real_residual(const StarReal& p, const StarReal& q) {
  const double a = p.preimage(), b = q.preimage();
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

/// Amount by which p <= q is violated, scaled like real_residual.
inline double excess_residual(const StarReal& p, const StarReal& q) {
  const double a = p.preimage(), b = q.preimage();
  return std::max(0.0, a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

struct Classification {
  bool hermitian = false;
  bool normal = false;
  bool unitary = false;
};

/// Hermitian: x = x*. Normal: x x* = x* x. Unitary: x x* = x* x = 1.
/// Throws Errc::no_involution / Errc::no_unit when the carrier lacks them.
template <CNAlgebra A>
Classification classify_element(const A& alg, const Element<A>& x, double tol = 1e-9) {
  if constexpr (!InvolutiveAlgebra<A>) {
    throw Error(Errc::no_involution, alg.carrier() + " carrier has no N-involution");
  } else {
    const auto xs = alg.star(x);
    const auto left = alg.mul(x, xs);
    const auto right = alg.mul(xs, x);
    Classification c;
    c.hermitian = alg.residual(x, xs) <= tol;
    c.normal = alg.residual(left, right) <= tol;
    if constexpr (UnitalAlgebra<A>) {
      const auto one = alg.unit();
      c.unitary = alg.residual(left, one) <= tol && alg.residual(right, one) <= tol;
    } else {
      throw Error(Errc::no_unit, alg.carrier() + " carrier has no unit; unitary is undefined");
    }
    return c;
  }
}

/// x = u + i.v with u = (1/2).(x + x*) and v = (1/(2i)).(x - x*), both hermitian.
template <CNAlgebra A>
std::pair<Element<A>, Element<A>> hermitian_parts(const A& alg, const Element<A>& x) {
  if constexpr (!InvolutiveAlgebra<A>) {
    throw Error(Errc::no_involution, alg.carrier() + " carrier has no N-involution");
  } else {
    const auto k = constants(alg.pair());
    const StarComplex two = StarComplex::from_preimages(alg.pair(), 2.0, 0.0);
    const StarComplex half = c_div(k.one, c_mul(two, k.one));
    const StarComplex inv_two_i = c_div(k.one, c_mul(two, k.i_unit));
    const auto xs = alg.star(x);
    return {alg.scale(half, alg.add(x, xs)), alg.scale(inv_two_i, alg.sub(x, xs))};
  }
}

/// u + i.v, the inverse of hermitian_parts.
template <CNAlgebra A>
Element<A> recombine_parts(const A& alg, const Element<A>& u, const Element<A>& v) {
  return alg.add(u, alg.scale(constants(alg.pair()).i_unit, v));
}

/// Randomized closure audit of a subset B of A. `distance(x)` measures how far
/// x is from B (0 for members); `sample_member(rng)` draws members of B.
/// Checks 0 in B and closure under +, scalar ., x and (optionally) *.
template <CNAlgebra A, class Distance, class Sampler>
AxiomReport subalgebra_closure_check(const A& alg, Distance&& distance, Sampler&& sample_member, std::size_t trials,
                                     double tol, std::uint64_t seed, bool check_star = false,
                                     std::string name = "subalgebra-closure") {
  Rng rng(seed);
  LawAudit audit(tol);
  const auto zero = alg.zero();
  audit.record("zero-membership", distance(zero), [&] { return alg.describe(zero); });
  for (std::size_t t = 0; t < trials; ++t) {
    const Element<A> x = sample_member(rng);
    const Element<A> y = sample_member(rng);
    const StarComplex lambda = sample_star_complex(rng, alg.pair());
    auto inputs = [&] {
      return nlohmann::ordered_json{{"x", alg.describe(x)}, {"y", alg.describe(y)}, {"lambda", preimage_json(lambda)}};
    };
    audit.record("closed-under-add", distance(alg.add(x, y)), inputs);
    audit.record("closed-under-scale", distance(alg.scale(lambda, x)), inputs);
    audit.record("closed-under-mul", distance(alg.mul(x, y)), inputs);
    if (check_star) {
      if constexpr (InvolutiveAlgebra<A>) {
        audit.record("closed-under-star", distance(alg.star(x)), inputs);
      } else {
        throw Error(Errc::no_involution, alg.carrier() + " carrier has no N-involution");
      }
    }
  }
  return std::move(audit).finish(std::move(name), alg.carrier(), alg.pair(), trials);
}

}  // namespace starcalc
