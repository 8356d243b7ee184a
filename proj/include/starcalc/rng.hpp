#pragma once

// Seeded sampling of star values. Uniform draws are computed from raw
// mt19937_64 output so sequences are identical on every standard library.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>

#include "starcalc/error.hpp"
#include "starcalc/generators.hpp"
#include "starcalc/star_complex.hpp"
#include "starcalc/star_real.hpp"

namespace starcalc {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  /// Uniform integer on [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }
  bool coin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

/// Preimage box for samplers: components uniform in [-radius, radius].
struct SampleBounds {
  double radius = 2.0;
  std::size_t max_degree = 3;  // polynomials

  void validate(const GeneratorPair& pair) const {
    if (!(radius > 0.0) || !std::isfinite(radius))
      throw Error(Errc::bounds, "sample radius must be positive and finite");
    const bool has_exp = pair.alpha.kind() == GeneratorKind::exp || pair.beta.kind() == GeneratorKind::exp;
    if (has_exp && radius > kExpPreimageLimit)
      throw Error(Errc::bounds, "sample radius exceeds the exp generator's working window");
  }
};

inline StarReal sample_star_real(Rng& rng, Generator g, const SampleBounds& bounds = {}) {
  bounds.validate(GeneratorPair{g, g});
  return StarReal::from_preimage(g, rng.uniform(-bounds.radius, bounds.radius));
}

inline StarComplex sample_star_complex(Rng& rng, const GeneratorPair& pair, const SampleBounds& bounds = {}) {
  bounds.validate(pair);
  const double re = rng.uniform(-bounds.radius, bounds.radius);
  const double im = rng.uniform(-bounds.radius, bounds.radius);
  return StarComplex::from_preimages(pair, re, im);
}

/// Uniform in the closed preimage disk of the given radius.
inline StarComplex sample_in_disk(Rng& rng, const GeneratorPair& pair, double radius) {
  const double r = radius * std::sqrt(rng.unit());
  const double theta = 2.0 * std::numbers::pi * rng.unit();
  return StarComplex::from_preimages(pair, r * std::cos(theta), r * std::sin(theta));
}

/// Preimage modulus exactly 1 (up to rounding).
inline StarComplex sample_unit_modulus(Rng& rng, const GeneratorPair& pair) {
  const double theta = 2.0 * std::numbers::pi * rng.unit();
  return StarComplex::from_preimages(pair, std::cos(theta), std::sin(theta));
}

}  // namespace starcalc
