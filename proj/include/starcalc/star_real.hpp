#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "starcalc/error.hpp"
#include "starcalc/generators.hpp"

namespace starcalc {

/// An element of R_g: the image value as written in *-notation, tagged with
/// its generator. The preimage is recomputed on demand.
class StarReal {
 public:
  StarReal() = default;

  static StarReal from_image(Generator g, double image) {
    (void)g.inverse(image);  // validates range
    return StarReal(g, image);
  }

  static StarReal from_preimage(Generator g, double t) { return StarReal(g, g.forward(t)); }

  Generator gen() const noexcept { return gen_; }
  double image() const noexcept { return image_; }
  double preimage() const { return gen_.inverse(image_); }

 private:
  StarReal(Generator g, double image) : gen_(g), image_(image) {}

  Generator gen_{};
  double image_ = 0.0;
};

enum class ArithKind { add, sub, mul, div };

namespace detail {
inline void require_same(const StarReal& y, const StarReal& z) {
  if (y.gen() != z.gen())
    throw Error(Errc::generator_mismatch, "mixed generators " + std::string(y.gen().id()) + " and " +
                                              std::string(z.gen().id()) + "; bridge them with iota");
}
}  // namespace detail

/// g(g^-1(y) op g^-1(z)).
inline StarReal arith(ArithKind kind, const StarReal& y, const StarReal& z) {
  detail::require_same(y, z);
  const double a = y.preimage();
  const double b = z.preimage();
  double r = 0.0;
  switch (kind) {
    case ArithKind::add: r = a + b; break;
    case ArithKind::sub: r = a - b; break;
    case ArithKind::mul: r = a * b; break;
    case ArithKind::div:
      if (b == 0.0) throw Error(Errc::division_by_zero, "division by the generator zero");
      r = a / b;
      break;
  }
  return StarReal::from_preimage(y.gen(), r);
}

inline StarReal operator+(const StarReal& y, const StarReal& z) { return arith(ArithKind::add, y, z); }
inline StarReal operator-(const StarReal& y, const StarReal& z) { return arith(ArithKind::sub, y, z); }
inline StarReal operator*(const StarReal& y, const StarReal& z) { return arith(ArithKind::mul, y, z); }
inline StarReal operator/(const StarReal& y, const StarReal& z) { return arith(ArithKind::div, y, z); }

/// Order of preimages. Generators are increasing, so this is also the order of images.
inline std::partial_ordering compare(const StarReal& y, const StarReal& z) {
  detail::require_same(y, z);
  return y.preimage() <=> z.preimage();
}

inline std::partial_ordering operator<=>(const StarReal& y, const StarReal& z) { return compare(y, z); }
inline bool operator==(const StarReal& y, const StarReal& z) { return compare(y, z) == 0; }

inline StarReal embed_int(Generator g, std::int64_t n) { return StarReal::from_preimage(g, static_cast<double>(n)); }
inline StarReal star_zero(Generator g) { return embed_int(g, 0); }
inline StarReal star_one(Generator g) { return embed_int(g, 1); }

inline bool is_positive(const StarReal& x) { return compare(star_zero(x.gen()), x) == std::partial_ordering::less; }
inline bool is_negative(const StarReal& x) { return compare(x, star_zero(x.gen())) == std::partial_ordering::less; }

inline StarReal alpha_abs(const StarReal& x) {
  const StarReal zero = star_zero(x.gen());
  if (is_negative(x)) return zero - x;
  if (is_positive(x)) return x;
  return zero;
}

inline StarReal square(const StarReal& b) { return b * b; }

inline StarReal sqrt(const StarReal& b) {
  const double t = b.preimage();
  if (t < 0.0) throw Error(Errc::negative_argument, "square root of a negative star value");
  return StarReal::from_preimage(b.gen(), std::sqrt(t));
}

/// iota(u) = beta(alpha^-1(u)).
inline StarReal iota(const GeneratorPair& pair, const StarReal& u) {
  if (u.gen() != pair.alpha)
    throw Error(Errc::generator_mismatch, "iota expects a value over the pair's alpha generator");
  return StarReal::from_preimage(pair.beta, u.preimage());
}

/// Relative closeness of preimages: |a - b| <= abs_tol + rel_tol * max(|a|, |b|).
inline bool preimage_close(double a, double b, double rel_tol = 1e-9, double abs_tol = 1e-12) {
  return std::abs(a - b) <= abs_tol + rel_tol * std::max(std::abs(a), std::abs(b));
}

inline bool approx_equal(const StarReal& y, const StarReal& z, double rel_tol = 1e-9, double abs_tol = 1e-12) {
  detail::require_same(y, z);
  return preimage_close(y.preimage(), z.preimage(), rel_tol, abs_tol);
}

// ---------------------------------------------------------------------------
// Series

enum class SeriesStatus { converged, max_terms, unbounded };

struct SeriesResult {
  StarReal sum;
  bool converged = false;
  std::size_t terms_used = 0;
  SeriesStatus status = SeriesStatus::max_terms;

  std::string reason() const {
    switch (status) {
      case SeriesStatus::converged: return "converged";
      case SeriesStatus::max_terms: return "max_terms reached without settling";
      case SeriesStatus::unbounded: return "partial sums leave the representable range (divergent)";
    }
    return "";
  }
};

inline constexpr std::size_t kDefaultMaxTerms = 10'000;
inline constexpr int kSettleSteps = 3;

/// Sums a generated series a_1 +. a_2 +. ... with the transported addition.
/// `term(n)` returns a_n for n = 1, 2, .... Convergence is declared once the
/// partial-sum preimage moves by at most `tol` for three consecutive terms.
template <class TermFn>
SeriesResult series_sum(Generator g, TermFn&& term, double tol, std::size_t max_terms = kDefaultMaxTerms) {
  if (!(tol > 0.0)) throw Error(Errc::bounds, "series tolerance must be positive");
  SeriesResult out{star_zero(g), false, 0, SeriesStatus::max_terms};
  int settled = 0;
  for (std::size_t n = 1; n <= max_terms; ++n) {
    const StarReal a = term(n);
    if (a.gen() != g) throw Error(Errc::generator_mismatch, "series term has a different generator");
    StarReal next;
    try {
      next = out.sum + a;
    } catch (const Error& e) {
      if (e.code() != Errc::overflow) throw;
      out.status = SeriesStatus::unbounded;
      return out;
    }
    const double delta = std::abs(next.preimage() - out.sum.preimage());
    out.sum = next;
    out.terms_used = n;
    settled = delta <= tol ? settled + 1 : 0;
    if (settled >= kSettleSteps) {
      out.converged = true;
      out.status = SeriesStatus::converged;
      return out;
    }
  }
  return out;
}

/// Finite sequence overload; a sequence that runs out before settling is not converged.
inline SeriesResult series_sum(std::span<const StarReal> terms, double tol, std::size_t max_terms = kDefaultMaxTerms) {
  if (terms.empty()) throw Error(Errc::bounds, "series over an empty sequence needs a generator");
  const Generator g = terms.front().gen();
  const std::size_t limit = std::min(max_terms, terms.size());
  return series_sum(g, [&](std::size_t n) { return terms[n - 1]; }, tol, limit);
}

}  // namespace starcalc
