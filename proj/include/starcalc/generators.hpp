#pragma once

// Generators: strictly increasing bijections from the reals onto a subset of
// the reals. Every transported ("star") value carries one.

#include <cmath>
#include <limits>
#include <string>
#include <string_view>

#include "starcalc/error.hpp"

namespace starcalc {

/// Image set of a generator. Bounds may be infinite.
struct Interval {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  bool lower_open = true;
  bool upper_open = true;

  bool contains(double y) const noexcept {
    if (std::isnan(y)) return false;
    const bool above = lower_open ? y > lower : y >= lower;
    const bool below = upper_open ? y < upper : y <= upper;
    return above && below;
  }

  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class GeneratorKind { identity, exp, cube };

/// Preimages fed to the exp generator must stay inside this window.
inline constexpr double kExpPreimageLimit = 700.0;

class Generator {
 public:
  constexpr Generator() noexcept = default;
  constexpr explicit Generator(GeneratorKind kind) noexcept : kind_(kind) {}

  constexpr GeneratorKind kind() const noexcept { return kind_; }

  std::string_view id() const noexcept {
    switch (kind_) {
      case GeneratorKind::identity: return "identity";
      case GeneratorKind::exp: return "exp";
      case GeneratorKind::cube: return "cube";
    }
    return "?";
  }

  Interval range() const noexcept {
    if (kind_ == GeneratorKind::exp) return Interval{0.0, std::numeric_limits<double>::infinity(), true, true};
    return Interval{};
  }

  /// The generator map t -> g(t). Throws Errc::overflow when the image is not
  /// representable (or, for exp, when |t| leaves the working window).
  double forward(double t) const {
    if (!std::isfinite(t)) throw Error(Errc::overflow, "generator " + std::string(id()) + ": non-finite preimage");
    double y = t;
    switch (kind_) {
      case GeneratorKind::identity: y = t; break;
      case GeneratorKind::exp:
        if (std::abs(t) > kExpPreimageLimit)
          throw Error(Errc::overflow, "exp generator: preimage " + std::to_string(t) + " outside [-700, 700]");
        y = std::exp(t);
        break;
      case GeneratorKind::cube: y = t * t * t; break;
    }
    if (!std::isfinite(y)) throw Error(Errc::overflow, "generator " + std::string(id()) + ": image overflows binary64");
    return y;
  }

  /// g^-1(y). Throws Errc::domain when y is outside range().
  double inverse(double y) const {
    if (!std::isfinite(y) || !range().contains(y))
      throw Error(Errc::domain, "generator " + std::string(id()) + ": value " + std::to_string(y) + " is not in its range");
    switch (kind_) {
      case GeneratorKind::identity: return y;
      case GeneratorKind::exp: return std::log(y);
      case GeneratorKind::cube: return std::cbrt(y);
    }
    return y;
  }

  friend constexpr bool operator==(Generator, Generator) noexcept = default;

 private:
  GeneratorKind kind_ = GeneratorKind::identity;
};

inline Generator builtin_generator(std::string_view name) {
  if (name == "identity") return Generator(GeneratorKind::identity);
  if (name == "exp") return Generator(GeneratorKind::exp);
  if (name == "cube") return Generator(GeneratorKind::cube);
  throw Error(Errc::unknown_name, "unknown generator '" + std::string(name) + "' (expected identity, exp or cube)");
}

inline double apply_forward(Generator g, double t) { return g.forward(t); }
inline double apply_inverse(Generator g, double y) { return g.inverse(y); }

/// The (alpha, beta) arithmetic context of a *-calculus.
struct GeneratorPair {
  Generator alpha;
  Generator beta;

  std::string name() const { return std::string(alpha.id()) + "," + std::string(beta.id()); }

  friend constexpr bool operator==(const GeneratorPair&, const GeneratorPair&) noexcept = default;
};

inline GeneratorPair pair_from_names(std::string_view alpha, std::string_view beta) {
  return GeneratorPair{builtin_generator(alpha), builtin_generator(beta)};
}

/// The four pairs the verification suites sweep over.
inline const GeneratorPair kStandardPairs[] = {
    {Generator(GeneratorKind::identity), Generator(GeneratorKind::identity)},
    {Generator(GeneratorKind::identity), Generator(GeneratorKind::exp)},
    {Generator(GeneratorKind::exp), Generator(GeneratorKind::exp)},
    {Generator(GeneratorKind::cube), Generator(GeneratorKind::exp)},
};

/// iota on raw images: beta(alpha^-1(u)).
inline double iota_image(const GeneratorPair& pair, double u) { return pair.beta.forward(pair.alpha.inverse(u)); }

}  // namespace starcalc
