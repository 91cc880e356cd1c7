#ifndef BOUNDSCAN_GEOMETRY_HPP_
#define BOUNDSCAN_GEOMETRY_HPP_

#include <cstdint>
#include <optional>

#include "boundscan/types.hpp"

namespace boundscan {

enum class InteriorMode {
  kClosed,
  // Closed ball intersected with the open interior of the circular cone.
  kPartiallyOpen,
};

// Circular cone {beta : (1 - sharpness)|beta| <= <beta, orient>}, optionally
// truncated to the closed ball of the given radius (radius = kInf means no
// truncation). The constructor rejects non-unit orients rather than
// normalizing them.
class ConeSpec {
 public:
  ConeSpec(Vec orient, double sharpness, double radius = kInf,
           InteriorMode mode = InteriorMode::kClosed);

  const Vec& orient() const { return orient_; }
  double sharpness() const { return sharpness_; }
  double radius() const { return radius_; }
  InteriorMode mode() const { return mode_; }
  std::size_t dim() const { return orient_.size(); }

  // Half-angle arccos(1 - sharpness).
  double half_angle() const;

 private:
  Vec orient_;
  double sharpness_;
  double radius_;
  InteriorMode mode_;
};

bool cone_contains(const ConeSpec& cone, std::span<const double> beta);

// Index of the first sample g with g - f inside the cone, if any.
std::optional<std::size_t> find_cone_violation(const std::vector<Vec>& image_sample,
                                               std::span<const double> f,
                                               const ConeSpec& cone);

// Sample-based check that (f + cone) misses the sampled image. A false result
// refutes the exterior cone condition at f; a true result cannot prove it.
bool exterior_cone_holds(const std::vector<Vec>& image_sample, std::span<const double> f,
                         const ConeSpec& cone);

// Deterministic set of n unit vectors in R^m. For m = 2 these are the evenly
// spaced orients (cos(2 pi i/n), sin(2 pi i/n)), i = 1..n. For m = 3 a
// spherical Fibonacci lattice rotated by a seed-derived angle; for m >= 4
// normalized Gaussian images of a shifted Halton sequence.
std::vector<Vec> unit_sphere_grid(std::size_t m, std::size_t n, std::uint64_t seed = 0);

}  // namespace boundscan

#endif  // BOUNDSCAN_GEOMETRY_HPP_
