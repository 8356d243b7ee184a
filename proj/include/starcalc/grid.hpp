#pragma once

// C_N(Omega) sampled on a finite subset of the disk ||z|| <= (1/2)_beta.
// Functions are value vectors indexed like the domain's point list; the sup
// norm is exact on the sample set.

#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "starcalc/algebra.hpp"
#include "starcalc/error.hpp"
#include "starcalc/rng.hpp"
#include "starcalc/star_complex.hpp"

namespace starcalc {

inline constexpr double kDiskRadius = 0.5;
inline constexpr double kDiskSlack = 1e-12;
inline constexpr double kPointSeparation = 1e-9;

class GridDomain {
 public:
  /// Validates the disk condition, distinctness, and presence of the origin.
  static std::shared_ptr<const GridDomain> create(const GeneratorPair& pair, std::vector<StarComplex> points) {
    bool has_origin = false;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& p = points[i];
      if (p.pair() != pair) throw Error(Errc::pair_mismatch, "grid point uses a different generator pair");
      const auto z = p.preimage();
      if (std::abs(z) > kDiskRadius + kDiskSlack)
        throw Error(Errc::domain, "grid point " + format_preimages(p) + " lies outside the disk of radius 1/2");
      if (std::abs(z) == 0.0) has_origin = true;
      for (std::size_t j = 0; j < i; ++j)
        if (std::abs(z - points[j].preimage()) <= kPointSeparation)
          throw Error(Errc::degenerate_parameter, "grid points " + std::to_string(j) + " and " + std::to_string(i) +
                                                      " coincide");
    }
    if (!has_origin) throw Error(Errc::degenerate_parameter, "grid domain must contain the origin");
    return std::shared_ptr<const GridDomain>(new GridDomain(pair, std::move(points)));
  }

  const GeneratorPair& pair() const noexcept { return pair_; }
  const std::vector<StarComplex>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }

  /// Index of the point within kPointSeparation of `p`, or npos.
  std::size_t find(const StarComplex& p) const {
    if (p.pair() != pair_) throw Error(Errc::pair_mismatch, "point uses a different generator pair");
    const auto z = p.preimage();
    for (std::size_t i = 0; i < points_.size(); ++i)
      if (std::abs(points_[i].preimage() - z) <= kPointSeparation) return i;
    return npos;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  friend bool operator==(const GridDomain& a, const GridDomain& b) {
    if (a.pair_ != b.pair_ || a.points_.size() != b.points_.size()) return false;
    for (std::size_t i = 0; i < a.points_.size(); ++i)
      if (a.points_[i].preimage() != b.points_[i].preimage()) return false;
    return true;
  }

 private:
  GridDomain(const GeneratorPair& pair, std::vector<StarComplex> points) : pair_(pair), points_(std::move(points)) {}

  GeneratorPair pair_;
  std::vector<StarComplex> points_;
};

using DomainPtr = std::shared_ptr<const GridDomain>;

/// Origin plus a polar lattice r = k/(2 radial), theta = 2 pi j / angular in
/// preimage coordinates.
inline DomainPtr make_disk_domain(const GeneratorPair& pair, std::size_t radial_steps, std::size_t angular_steps) {
  if (radial_steps < 1 || angular_steps < 3)
    throw Error(Errc::degenerate_parameter, "disk grid needs radial_steps >= 1 and angular_steps >= 3");
  std::vector<StarComplex> points;
  points.reserve(1 + radial_steps * angular_steps);
  points.push_back(StarComplex::from_preimages(pair, 0.0, 0.0));
  for (std::size_t k = 1; k <= radial_steps; ++k) {
    const double r = static_cast<double>(k) / (2.0 * static_cast<double>(radial_steps));
    for (std::size_t j = 0; j < angular_steps; ++j) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(angular_steps);
      // Snap the rounding residue of cos/sin at quarter turns to exact zeros.
      const double c = std::abs(std::cos(theta)) < 1e-15 ? 0.0 : std::cos(theta);
      const double s = std::abs(std::sin(theta)) < 1e-15 ? 0.0 : std::sin(theta);
      points.push_back(StarComplex::from_preimages(pair, r * c, r * s));
    }
  }
  return GridDomain::create(pair, std::move(points));
}

/// Same domain with `p` appended (no-op if already present).
inline DomainPtr with_point(const DomainPtr& dom, const StarComplex& p) {
  if (dom->find(p) != GridDomain::npos) return dom;
  auto points = dom->points();
  points.push_back(p);
  return GridDomain::create(dom->pair(), std::move(points));
}

inline bool same_domain(const DomainPtr& a, const DomainPtr& b) { return a == b || (a && b && *a == *b); }

class GridFunction {
 public:
  GridFunction(DomainPtr domain, std::vector<StarComplex> values) : domain_(std::move(domain)), values_(std::move(values)) {
    if (!domain_) throw Error(Errc::domain_mismatch, "grid function needs a domain");
    if (values_.size() != domain_->size())
      throw Error(Errc::domain_mismatch, "grid function has " + std::to_string(values_.size()) + " values for " +
                                             std::to_string(domain_->size()) + " points");
    for (const auto& v : values_)
      if (v.pair() != domain_->pair()) throw Error(Errc::pair_mismatch, "grid value uses a different generator pair");
  }

  template <class Fn>
  static GridFunction sample(const DomainPtr& domain, Fn&& fn) {
    std::vector<StarComplex> values;
    values.reserve(domain->size());
    for (const auto& p : domain->points()) values.push_back(fn(p));
    return GridFunction(domain, std::move(values));
  }

  static GridFunction constant(const DomainPtr& domain, const StarComplex& c) {
    return GridFunction(domain, std::vector<StarComplex>(domain->size(), c));
  }

  /// f(z) = z.
  static GridFunction coordinate(const DomainPtr& domain) { return GridFunction(domain, domain->points()); }

  const DomainPtr& domain() const noexcept { return domain_; }
  const std::vector<StarComplex>& values() const noexcept { return values_; }
  const StarComplex& operator[](std::size_t i) const { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  DomainPtr domain_;
  std::vector<StarComplex> values_;
};

namespace detail {
inline void require_same(const GridFunction& f, const GridFunction& g) {
  if (!same_domain(f.domain(), g.domain()))
    throw Error(Errc::domain_mismatch, "grid functions live on different domains");
}

template <class Op>
GridFunction zip(const GridFunction& f, const GridFunction& g, Op op) {
  require_same(f, g);
  std::vector<StarComplex> out;
  out.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out.push_back(op(f[i], g[i]));
  return GridFunction(f.domain(), std::move(out));
}

template <class Op>
GridFunction map(const GridFunction& f, Op op) {
  std::vector<StarComplex> out;
  out.reserve(f.size());
  for (const auto& v : f.values()) out.push_back(op(v));
  return GridFunction(f.domain(), std::move(out));
}
}  // namespace detail

inline GridFunction fn_add(const GridFunction& f, const GridFunction& g) { return detail::zip(f, g, c_add); }
inline GridFunction fn_sub(const GridFunction& f, const GridFunction& g) { return detail::zip(f, g, c_sub); }
inline GridFunction fn_mul(const GridFunction& f, const GridFunction& g) { return detail::zip(f, g, c_mul); }
inline GridFunction fn_scale(const StarComplex& lambda, const GridFunction& f) {
  return detail::map(f, [&](const StarComplex& v) { return c_mul(lambda, v); });
}
/// f*(z) = conj(f(z)).
inline GridFunction fn_involution(const GridFunction& f) { return detail::map(f, c_conj); }

/// beta-maximum of ||f(z)|| over the sample points.
inline StarReal sup_norm(const GridFunction& f) {
  StarReal best = star_zero(f.domain()->pair().beta);
  for (const auto& v : f.values()) {
    const StarReal n = c_norm(v);
    if (compare(best, n) == std::partial_ordering::less) best = n;
  }
  return best;
}

/// Max over points of the scaled preimage distance.
inline double grid_residual(const GridFunction& f, const GridFunction& g) {
  detail::require_same(f, g);
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) worst = std::max(worst, residual(f[i], g[i]));
  return worst;
}

inline nlohmann::ordered_json describe_grid(const GridFunction& f) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& v : f.values()) arr.push_back(preimage_json(v));
  return arr;
}

inline GridFunction sample_grid_function(Rng& rng, const DomainPtr& domain, const SampleBounds& bounds = {}) {
  std::vector<StarComplex> values;
  values.reserve(domain->size());
  for (std::size_t i = 0; i < domain->size(); ++i) values.push_back(sample_star_complex(rng, domain->pair(), bounds));
  return GridFunction(domain, std::move(values));
}

/// C_N(Omega) on a fixed sampled domain.
class GridAlgebra {
 public:
  using element_type = GridFunction;

  explicit GridAlgebra(DomainPtr domain) : domain_(std::move(domain)) {}

  std::string carrier() const { return "grid"; }
  GeneratorPair pair() const { return domain_->pair(); }
  const DomainPtr& domain() const noexcept { return domain_; }
  GridFunction zero() const { return GridFunction::constant(domain_, constants(pair()).zero); }
  GridFunction unit() const { return GridFunction::constant(domain_, constants(pair()).one); }
  GridFunction add(const GridFunction& f, const GridFunction& g) const { return fn_add(own(f), g); }
  GridFunction sub(const GridFunction& f, const GridFunction& g) const { return fn_sub(own(f), g); }
  GridFunction scale(const StarComplex& l, const GridFunction& f) const { return fn_scale(l, own(f)); }
  GridFunction mul(const GridFunction& f, const GridFunction& g) const { return fn_mul(own(f), g); }
  GridFunction star(const GridFunction& f) const { return fn_involution(own(f)); }
  StarReal norm(const GridFunction& f) const { return sup_norm(own(f)); }
  double residual(const GridFunction& f, const GridFunction& g) const { return grid_residual(own(f), g); }
  nlohmann::ordered_json describe(const GridFunction& f) const { return describe_grid(f); }
  GridFunction sample(Rng& rng, const SampleBounds& bounds) const { return sample_grid_function(rng, domain_, bounds); }

 private:
  const GridFunction& own(const GridFunction& f) const {
    if (!same_domain(f.domain(), domain_))
      throw Error(Errc::domain_mismatch, "grid function does not live on this algebra's domain");
    return f;
  }

  DomainPtr domain_;
};

/// I_z = { f : f(z) = 0 } for a domain point z.
class EvaluationIdeal {
 public:
  EvaluationIdeal(DomainPtr domain, const StarComplex& point) : domain_(std::move(domain)) {
    index_ = domain_->find(point);
    if (index_ == GridDomain::npos)
      throw Error(Errc::point_not_in_domain, "point " + format_preimages(point) + " is not a grid point");
  }

  const DomainPtr& domain() const noexcept { return domain_; }
  std::size_t index() const noexcept { return index_; }
  const StarComplex& point() const { return domain_->points()[index_]; }

 private:
  DomainPtr domain_;
  std::size_t index_ = 0;
};

namespace detail {
inline void require_on(const EvaluationIdeal& ideal, const GridFunction& f) {
  if (!same_domain(ideal.domain(), f.domain()))
    throw Error(Errc::domain_mismatch, "function and ideal live on different domains");
}
}  // namespace detail

inline bool ideal_membership(const EvaluationIdeal& ideal, const GridFunction& f, double tol = 1e-9) {
  detail::require_on(ideal, f);
  return std::abs(f[ideal.index()].preimage()) <= tol;
}

/// inf{ ||f + g|| : g in I_z }. On a finite grid the infimum is attained and
/// equals ||f(z)||.
inline StarReal quotient_norm(const GridFunction& f, const EvaluationIdeal& ideal) {
  detail::require_on(ideal, f);
  return c_norm(f[ideal.index()]);
}

/// The member g of I_z with ||f + g|| = ||f(z)||: f + g is the constant f(z).
inline GridFunction quotient_witness(const GridFunction& f, const EvaluationIdeal& ideal) {
  detail::require_on(ideal, f);
  const StarComplex at = f[ideal.index()];
  return detail::map(f, [&](const StarComplex& v) { return c_sub(at, v); });
}

/// f - f(z).1, the projection of f onto I_z.
inline GridFunction project_to_ideal(const GridFunction& f, const EvaluationIdeal& ideal) {
  detail::require_on(ideal, f);
  const StarComplex at = f[ideal.index()];
  return detail::map(f, [&](const StarComplex& v) { return c_sub(v, at); });
}

}  // namespace starcalc
