#pragma once

// N-inversion by series: the Neumann series sum (1 - x)^n inside the unit ball
// around 1, and the perturbative series around a known invertible x0.

#include <cstddef>
#include <tuple>

#include <nlohmann/json.hpp>

#include "starcalc/algebra.hpp"
#include "starcalc/error.hpp"

namespace starcalc {

inline constexpr double kDefaultInversionTol = 1e-10;

template <class E>
struct InversionReport {
  E inverse;
  bool converged = false;
  std::size_t terms_used = 0;
  StarReal residual;       // ||x inv - 1||
  StarReal left_residual;  // ||inv x - 1||
};

template <class E>
nlohmann::ordered_json inversion_json(const InversionReport<E>& r) {
  return {{"converged", r.converged},
          {"terms_used", r.terms_used},
          {"residual_preimage", r.residual.preimage()},
          {"left_residual_preimage", r.left_residual.preimage()}};
}

namespace detail {

template <UnitalAlgebra A>
std::pair<StarReal, StarReal> two_sided_residual(const A& alg, const Element<A>& x, const Element<A>& inv) {
  const auto one = alg.unit();
  return {alg.norm(alg.sub(alg.mul(x, inv), one)), alg.norm(alg.sub(alg.mul(inv, x), one))};
}

/// Accumulates sum_{n>=0} t^n, passing each partial sum through `finish`,
/// until the two-sided residual of the finished sum against x is <= tol.
template <UnitalAlgebra A, class Finish>
InversionReport<Element<A>> geometric_inverse(const A& alg, const Element<A>& x, const Element<A>& t, double tol,
                                              std::size_t max_terms, Finish&& finish) {
  Element<A> power = alg.unit();
  Element<A> sum = power;
  InversionReport<Element<A>> r{finish(sum), false, 1, {}, {}};
  for (;;) {
    std::tie(r.residual, r.left_residual) = two_sided_residual(alg, x, r.inverse);
    if (r.residual.preimage() <= tol && r.left_residual.preimage() <= tol) {
      r.converged = true;
      return r;
    }
    if (r.terms_used >= max_terms) return r;
    power = alg.mul(power, t);
    sum = alg.add(sum, power);
    r.inverse = finish(sum);
    ++r.terms_used;
  }
}

}  // namespace detail

/// x^{-1} = sum (1 - x)^n. Requires ||1 - x|| < 1.
template <UnitalAlgebra A>
InversionReport<Element<A>> neumann_inverse(const A& alg, const Element<A>& x, double tol = kDefaultInversionTol,
                                            std::size_t max_terms = kDefaultMaxTerms) {
  const auto t = alg.sub(alg.unit(), x);
  const double q = alg.norm(t).preimage();
  if (!(q < 1.0))
    throw Error(Errc::not_applicable,
                "Neumann series needs ||1 - x|| < 1; got " + format_number(q) + " (preimage)");
  return detail::geometric_inverse(alg, x, t, tol, max_terms, [](const Element<A>& s) { return s; });
}

/// x^{-1} = (sum [x0^{-1} (x0 - x)]^n) x0^{-1}. Requires x0_inv to invert x0
/// within tol and ||x - x0|| < 1 / ||x0^{-1}||.
template <UnitalAlgebra A>
InversionReport<Element<A>> perturbative_inverse(const A& alg, const Element<A>& x, const Element<A>& x0,
                                                 const Element<A>& x0_inv, double tol = kDefaultInversionTol,
                                                 std::size_t max_terms = kDefaultMaxTerms) {
  const auto [right, left] = detail::two_sided_residual(alg, x0, x0_inv);
  if (right.preimage() > tol || left.preimage() > tol)
    throw Error(Errc::bad_inverse, "supplied x0 inverse misses by " +
                                       format_number(std::max(right.preimage(), left.preimage())) + " (preimage)");
  const double c = alg.norm(x0_inv).preimage() * alg.norm(alg.sub(x, x0)).preimage();
  if (!(c < 1.0))
    throw Error(Errc::not_applicable,
                "perturbative series needs ||x0^-1|| ||x - x0|| < 1; got " + format_number(c) + " (preimage)");
  const auto t = alg.mul(x0_inv, alg.sub(x0, x));
  return detail::geometric_inverse(alg, x, t, tol, max_terms,
                                   [&](const Element<A>& s) { return alg.mul(s, x0_inv); });
}

/// Norm-continuity of inversion near x0. The relaxed bound
/// ||x^-1 - x0^-1|| <= 2 ||x0^-1||^2 ||x - x0|| holds whenever
/// c = ||x0^-1|| ||x - x0|| <= 1/2. The bound without the factor 2 is
/// reported but is not a theorem (x0 = 1, x = 0.9 violates it).
struct ContinuityBound {
  StarReal lhs;
  StarReal rhs;          // relaxed, factor 2
  StarReal literal_rhs;  // without the factor 2
  StarReal c;
  bool condition_met = false;
  bool holds = false;
  bool literal_holds = false;
};

inline constexpr double kBoundSlack = 1e-12;

template <UnitalAlgebra A>
ContinuityBound continuity_bound_check(const A& alg, const Element<A>& x, const Element<A>& x0,
                                       const Element<A>& x0_inv, double tol = kDefaultInversionTol) {
  const Generator beta = alg.pair().beta;
  const StarReal n0 = alg.norm(x0_inv);
  const StarReal d = alg.norm(alg.sub(x, x0));
  ContinuityBound b;
  b.c = n0 * d;
  b.condition_met = b.c.preimage() <= 0.5;
  if (!b.condition_met)
    throw Error(Errc::not_applicable,
                "continuity bound needs c = ||x0^-1|| ||x - x0|| <= 1/2; got " + format_number(b.c.preimage()));
  const auto inv = perturbative_inverse(alg, x, x0, x0_inv, tol);
  if (!inv.converged) throw Error(Errc::not_applicable, "inverse of x did not converge");
  b.lhs = alg.norm(alg.sub(inv.inverse, x0_inv));
  b.literal_rhs = square(n0) * d;
  b.rhs = embed_int(beta, 2) * b.literal_rhs;
  auto within = [](const StarReal& p, const StarReal& q) {
    return p.preimage() <= q.preimage() + kBoundSlack * std::max(1.0, std::abs(q.preimage()));
  };
  b.holds = within(b.lhs, b.rhs);
  b.literal_holds = within(b.lhs, b.literal_rhs);
  return b;
}

}  // namespace starcalc
