#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>

#include "starcalc/error.hpp"
#include "starcalc/generators.hpp"
#include "starcalc/star_real.hpp"

namespace starcalc {

/// A *-point (a., b..): real part over alpha, imaginary part over beta.
/// Stored as images; `preimage()` gives the classical complex coordinate.
class StarComplex {
 public:
  StarComplex() = default;

  static StarComplex from_parts(const GeneratorPair& pair, const StarReal& a, const StarReal& b) {
    if (a.gen() != pair.alpha || b.gen() != pair.beta)
      throw Error(Errc::generator_mismatch, "*-point parts do not match the generator pair " + pair.name());
    return StarComplex(pair, a, b);
  }

  static StarComplex from_preimages(const GeneratorPair& pair, double re, double im) {
    return StarComplex(pair, StarReal::from_preimage(pair.alpha, re), StarReal::from_preimage(pair.beta, im));
  }

  static StarComplex from_preimage(const GeneratorPair& pair, std::complex<double> z) {
    return from_preimages(pair, z.real(), z.imag());
  }

  static StarComplex from_images(const GeneratorPair& pair, double a_image, double b_image) {
    return StarComplex(pair, StarReal::from_image(pair.alpha, a_image), StarReal::from_image(pair.beta, b_image));
  }

  const GeneratorPair& pair() const noexcept { return pair_; }
  const StarReal& a() const noexcept { return a_; }
  const StarReal& b() const noexcept { return b_; }

  std::complex<double> preimage() const { return {a_.preimage(), b_.preimage()}; }

 private:
  StarComplex(const GeneratorPair& pair, const StarReal& a, const StarReal& b) : pair_(pair), a_(a), b_(b) {}

  GeneratorPair pair_{};
  StarReal a_{};
  StarReal b_{};
};

namespace detail {
inline void require_same(const StarComplex& z, const StarComplex& w) {
  if (z.pair() != w.pair())
    throw Error(Errc::pair_mismatch, "operands use different generator pairs (" + z.pair().name() + " vs " +
                                         w.pair().name() + ")");
}
}  // namespace detail

struct Constants {
  StarComplex zero;
  StarComplex one;
  StarComplex i_unit;
};

inline Constants constants(const GeneratorPair& pair) {
  return {StarComplex::from_preimages(pair, 0.0, 0.0), StarComplex::from_preimages(pair, 1.0, 0.0),
          StarComplex::from_preimages(pair, 0.0, 1.0)};
}

inline StarComplex c_add(const StarComplex& z, const StarComplex& w) {
  detail::require_same(z, w);
  return StarComplex::from_parts(z.pair(), z.a() + w.a(), z.b() + w.b());
}

inline StarComplex c_sub(const StarComplex& z, const StarComplex& w) {
  detail::require_same(z, w);
  return StarComplex::from_parts(z.pair(), z.a() - w.a(), z.b() - w.b());
}

inline StarComplex c_neg(const StarComplex& z) { return c_sub(constants(z.pair()).zero, z); }

inline StarComplex c_mul(const StarComplex& z, const StarComplex& w) {
  detail::require_same(z, w);
  const double a1 = z.a().preimage(), b1 = z.b().preimage();
  const double a2 = w.a().preimage(), b2 = w.b().preimage();
  return StarComplex::from_preimages(z.pair(), a1 * a2 - b1 * b2, a1 * b2 + b1 * a2);
}

inline StarComplex c_div(const StarComplex& z, const StarComplex& w) {
  detail::require_same(z, w);
  const double a = z.a().preimage(), b = z.b().preimage();
  const double c = w.a().preimage(), d = w.b().preimage();
  const double den = c * c + d * d;
  if (den == 0.0) throw Error(Errc::division_by_zero, "division by the *-complex zero");
  return StarComplex::from_preimages(z.pair(), (a * c + b * d) / den, (b * c - a * d) / den);
}

inline StarComplex c_conj(const StarComplex& z) {
  return StarComplex::from_parts(z.pair(), z.a(), star_zero(z.pair().beta) - z.b());
}

/// beta(sqrt(a^2 + b^2)) over preimages.
inline StarReal c_norm(const StarComplex& z) {
  return StarReal::from_preimage(z.pair().beta, std::hypot(z.a().preimage(), z.b().preimage()));
}

inline StarComplex operator+(const StarComplex& z, const StarComplex& w) { return c_add(z, w); }
inline StarComplex operator-(const StarComplex& z, const StarComplex& w) { return c_sub(z, w); }
inline StarComplex operator*(const StarComplex& z, const StarComplex& w) { return c_mul(z, w); }
inline StarComplex operator/(const StarComplex& z, const StarComplex& w) { return c_div(z, w); }
inline StarComplex operator-(const StarComplex& z) { return c_neg(z); }

/// Scaled preimage distance: |p - q| / max(1, |p|, |q|).
inline double residual(std::complex<double> p, std::complex<double> q) {
  return std::abs(p - q) / std::max({1.0, std::abs(p), std::abs(q)});
}

inline double residual(const StarComplex& z, const StarComplex& w) {
  detail::require_same(z, w);
  return residual(z.preimage(), w.preimage());
}

/// Tolerance equality on preimages (abs 1e-12, rel 1e-9 by default).
inline bool approx_equal(const StarComplex& z, const StarComplex& w, double rel_tol = 1e-9, double abs_tol = 1e-12) {
  detail::require_same(z, w);
  const auto p = z.preimage(), q = w.preimage();
  return std::abs(p - q) <= abs_tol + rel_tol * std::max(std::abs(p), std::abs(q));
}

inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// "(a_image, b_image)" with 17 significant digits.
inline std::string format_images(const StarComplex& z) {
  return "(" + format_number(z.a().image()) + ", " + format_number(z.b().image()) + ")";
}

inline std::string format_preimages(const StarComplex& z) {
  const auto p = z.preimage();
  return "(" + format_number(p.real()) + ", " + format_number(p.imag()) + ")";
}

}  // namespace starcalc
