#pragma once

// N-polynomials z0 (+) z1 (.) z (+) ... (+) zn (.) z^n with dense coefficients
// in ascending degree.

#include <algorithm>
#include <complex>
#include <vector>

#include "starcalc/algebra.hpp"
#include "starcalc/grid.hpp"
#include "starcalc/star_complex.hpp"

namespace starcalc {

inline constexpr double kCoefficientTrim = 1e-12;

class StarPolynomial {
 public:
  StarPolynomial(const GeneratorPair& pair, std::vector<StarComplex> coefficients)
      : pair_(pair), coefficients_(std::move(coefficients)) {
    if (coefficients_.empty()) coefficients_.push_back(constants(pair_).zero);
    for (const auto& c : coefficients_)
      if (c.pair() != pair_) throw Error(Errc::pair_mismatch, "polynomial coefficient uses a different generator pair");
    while (coefficients_.size() > 1 && std::abs(coefficients_.back().preimage()) <= kCoefficientTrim)
      coefficients_.pop_back();
  }

  /// From preimage coefficients.
  static StarPolynomial from_preimages(const GeneratorPair& pair, const std::vector<std::complex<double>>& coeffs) {
    std::vector<StarComplex> cs;
    cs.reserve(coeffs.size());
    for (const auto& c : coeffs) cs.push_back(StarComplex::from_preimage(pair, c));
    return StarPolynomial(pair, std::move(cs));
  }

  const GeneratorPair& pair() const noexcept { return pair_; }
  const std::vector<StarComplex>& coefficients() const noexcept { return coefficients_; }
  std::size_t degree() const noexcept { return coefficients_.size() - 1; }

 private:
  GeneratorPair pair_;
  std::vector<StarComplex> coefficients_;
};

namespace detail {
inline void require_same(const StarPolynomial& p, const StarComplex& z) {
  if (p.pair() != z.pair()) throw Error(Errc::pair_mismatch, "polynomial and argument use different generator pairs");
}
inline void require_same(const StarPolynomial& p, const StarPolynomial& q) {
  if (p.pair() != q.pair()) throw Error(Errc::pair_mismatch, "polynomials use different generator pairs");
}
}  // namespace detail

/// Horner evaluation with (+) and (.).
inline StarComplex poly_eval(const StarPolynomial& p, const StarComplex& z) {
  detail::require_same(p, z);
  const auto& cs = p.coefficients();
  StarComplex acc = cs.back();
  for (std::size_t k = cs.size() - 1; k-- > 0;) acc = c_add(c_mul(acc, z), cs[k]);
  return acc;
}

/// Power-sum evaluation z0 (+) z1 z (+) z2 z^2 ...; reference for poly_eval.
inline StarComplex poly_eval_naive(const StarPolynomial& p, const StarComplex& z) {
  detail::require_same(p, z);
  const auto k = constants(p.pair());
  StarComplex acc = k.zero;
  StarComplex power = k.one;
  for (const auto& c : p.coefficients()) {
    acc = c_add(acc, c_mul(c, power));
    power = c_mul(power, z);
  }
  return acc;
}

inline GridFunction poly_to_grid(const StarPolynomial& p, const DomainPtr& domain) {
  if (p.pair() != domain->pair()) throw Error(Errc::pair_mismatch, "polynomial and domain use different generator pairs");
  return GridFunction::sample(domain, [&](const StarComplex& z) { return poly_eval(p, z); });
}

inline StarPolynomial poly_add(const StarPolynomial& p, const StarPolynomial& q) {
  detail::require_same(p, q);
  const auto zero = constants(p.pair()).zero;
  const auto& a = p.coefficients();
  const auto& b = q.coefficients();
  std::vector<StarComplex> out(std::max(a.size(), b.size()), zero);
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = c_add(k < a.size() ? a[k] : zero, k < b.size() ? b[k] : zero);
  return StarPolynomial(p.pair(), std::move(out));
}

inline StarPolynomial poly_sub(const StarPolynomial& p, const StarPolynomial& q) {
  detail::require_same(p, q);
  const auto zero = constants(p.pair()).zero;
  const auto& a = p.coefficients();
  const auto& b = q.coefficients();
  std::vector<StarComplex> out(std::max(a.size(), b.size()), zero);
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = c_sub(k < a.size() ? a[k] : zero, k < b.size() ? b[k] : zero);
  return StarPolynomial(p.pair(), std::move(out));
}

inline StarPolynomial poly_scale(const StarComplex& lambda, const StarPolynomial& p) {
  detail::require_same(p, lambda);
  std::vector<StarComplex> out;
  out.reserve(p.coefficients().size());
  for (const auto& c : p.coefficients()) out.push_back(c_mul(lambda, c));
  return StarPolynomial(p.pair(), std::move(out));
}

inline StarPolynomial poly_mul(const StarPolynomial& p, const StarPolynomial& q) {
  detail::require_same(p, q);
  const auto& a = p.coefficients();
  const auto& b = q.coefficients();
  std::vector<StarComplex> out(a.size() + b.size() - 1, constants(p.pair()).zero);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = c_add(out[i + j], c_mul(a[i], b[j]));
  return StarPolynomial(p.pair(), std::move(out));
}

inline StarPolynomial sample_polynomial(Rng& rng, const GeneratorPair& pair, const SampleBounds& bounds = {}) {
  const auto degree = static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(bounds.max_degree)));
  std::vector<StarComplex> cs;
  for (std::size_t k = 0; k <= degree; ++k) cs.push_back(sample_star_complex(rng, pair, bounds));
  return StarPolynomial(pair, std::move(cs));
}

/// Distance from f to the samples of polynomials of degree <= max_degree:
/// the largest least-squares residual over the grid, scaled by max(1, |f|).
/// Projection uses twice-applied modified Gram-Schmidt on the Vandermonde
/// columns of the rescaled variable 2z (so |2z| <= 1).
inline double polynomial_fit_residual(const GridFunction& f, std::size_t max_degree) {
  using C = std::complex<double>;
  const auto& pts = f.domain()->points();
  const std::size_t n = pts.size();
  std::vector<std::vector<C>> basis;
  std::vector<C> column(n, C(1.0, 0.0));
  for (std::size_t d = 0; d <= std::min(max_degree, n - 1); ++d) {
    std::vector<C> v = column;
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) {
        C dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += std::conj(q[i]) * v[i];
        for (std::size_t i = 0; i < n; ++i) v[i] -= dot * q[i];
      }
    double norm = 0.0;
    for (const auto& x : v) norm += std::norm(x);
    norm = std::sqrt(norm);
    if (norm > 1e-12) {
      for (auto& x : v) x /= norm;
      basis.push_back(std::move(v));
    }
    for (std::size_t i = 0; i < n; ++i) column[i] *= 2.0 * pts[i].preimage();
  }
  std::vector<C> r(n);
  double scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = f[i].preimage();
    scale = std::max(scale, std::abs(r[i]));
  }
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& q : basis) {
      C dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += std::conj(q[i]) * r[i];
      for (std::size_t i = 0; i < n; ++i) r[i] -= dot * q[i];
    }
  double worst = 0.0;
  for (const auto& x : r) worst = std::max(worst, std::abs(x));
  return worst / scale;
}

/// C(N)[z] as a subalgebra of C_N(Omega): normed by the sup over the domain.
/// No N-involution: conjugating a polynomial does not give a polynomial in z.
class PolynomialAlgebra {
 public:
  using element_type = StarPolynomial;

  explicit PolynomialAlgebra(DomainPtr domain) : domain_(std::move(domain)) {}

  std::string carrier() const { return "polynomial"; }
  GeneratorPair pair() const { return domain_->pair(); }
  const DomainPtr& domain() const noexcept { return domain_; }
  StarPolynomial zero() const { return StarPolynomial(pair(), {constants(pair()).zero}); }
  StarPolynomial unit() const { return StarPolynomial(pair(), {constants(pair()).one}); }
  StarPolynomial add(const StarPolynomial& p, const StarPolynomial& q) const { return poly_add(p, q); }
  StarPolynomial sub(const StarPolynomial& p, const StarPolynomial& q) const { return poly_sub(p, q); }
  StarPolynomial scale(const StarComplex& l, const StarPolynomial& p) const { return poly_scale(l, p); }
  StarPolynomial mul(const StarPolynomial& p, const StarPolynomial& q) const { return poly_mul(p, q); }
  StarReal norm(const StarPolynomial& p) const { return sup_norm(poly_to_grid(p, domain_)); }

  double residual(const StarPolynomial& p, const StarPolynomial& q) const {
    detail::require_same(p, q);
    const auto zero = constants(pair()).zero;
    const auto& a = p.coefficients();
    const auto& b = q.coefficients();
    double worst = 0.0;
    for (std::size_t k = 0; k < std::max(a.size(), b.size()); ++k)
      worst = std::max(worst, starcalc::residual(k < a.size() ? a[k] : zero, k < b.size() ? b[k] : zero));
    return worst;
  }

  nlohmann::ordered_json describe(const StarPolynomial& p) const {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : p.coefficients()) arr.push_back(preimage_json(c));
    return arr;
  }

  StarPolynomial sample(Rng& rng, const SampleBounds& bounds) const { return sample_polynomial(rng, pair(), bounds); }

 private:
  DomainPtr domain_;
};

}  // namespace starcalc
