#include "boundscan/geometry.hpp"

#include <cmath>
#include <numbers>

#include "boundscan/low_discrepancy.hpp"

namespace boundscan {

ConeSpec::ConeSpec(Vec orient, double sharpness, double radius, InteriorMode mode)
    : orient_(std::move(orient)), sharpness_(sharpness), radius_(radius), mode_(mode) {
  if (orient_.empty()) throw DimensionError("ConeSpec: empty orient");
  require_finite(orient_, "ConeSpec");
  require_unit(orient_, "ConeSpec");
  if (!(sharpness_ > 0.0 && sharpness_ <= 1.0)) {
    throw std::invalid_argument("ConeSpec: sharpness must lie in (0, 1]");
  }
  if (!(radius_ > 0.0)) throw std::invalid_argument("ConeSpec: radius must be positive");
}

double ConeSpec::half_angle() const { return std::acos(1.0 - sharpness_); }

bool cone_contains(const ConeSpec& cone, std::span<const double> beta) {
  require_same_dim(cone.orient(), beta, "cone_contains");
  const double len = norm(beta);
  if (len > cone.radius() + kTolGeom) return false;
  const double lhs = (1.0 - cone.sharpness()) * len;
  const double rhs = dot(beta, cone.orient());
  if (cone.mode() == InteriorMode::kClosed) return lhs <= rhs + kTolGeom;
  return lhs < rhs - kTolGeom;
}

std::optional<std::size_t> find_cone_violation(const std::vector<Vec>& image_sample,
                                               std::span<const double> f,
                                               const ConeSpec& cone) {
  if (image_sample.empty()) {
    throw std::invalid_argument("exterior cone check needs a nonempty image sample");
  }
  require_same_dim(cone.orient(), f, "exterior_cone_holds");
  require_finite(f, "exterior_cone_holds");
  Vec diff(f.size());
  for (std::size_t i = 0; i < image_sample.size(); ++i) {
    const Vec& g = image_sample[i];
    require_same_dim(g, f, "exterior_cone_holds");
    for (std::size_t j = 0; j < f.size(); ++j) diff[j] = g[j] - f[j];
    if (cone_contains(cone, diff)) return i;
  }
  return std::nullopt;
}

bool exterior_cone_holds(const std::vector<Vec>& image_sample, std::span<const double> f,
                         const ConeSpec& cone) {
  if (cone.mode() != InteriorMode::kPartiallyOpen) {
    throw std::invalid_argument("exterior_cone_holds expects a partially open cone");
  }
  return !find_cone_violation(image_sample, f, cone).has_value();
}

std::vector<Vec> unit_sphere_grid(std::size_t m, std::size_t n, std::uint64_t seed) {
  if (m < 2) throw std::invalid_argument("unit_sphere_grid: dimension must be >= 2");
  if (n < 1) throw std::invalid_argument("unit_sphere_grid: count must be >= 1");
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  std::vector<Vec> out;
  out.reserve(n);
  if (m == 2) {
    for (std::size_t i = 1; i <= n; ++i) {
      const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
      out.push_back({std::cos(t), std::sin(t)});
    }
    return out;
  }
  if (m == 3) {
    const double offset = kTwoPi * unit_from_bits(mix64(seed));
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = kTwoPi * static_cast<double>(i) / golden + offset;
      Vec v{rho * std::cos(phi), rho * std::sin(phi), z};
      const double len = norm(v);
      for (double& x : v) x /= len;
      out.push_back(std::move(v));
    }
    return out;
  }
  const std::size_t pairs = (m + 1) / 2;
  HaltonSequence seq(2 * pairs, seed);
  Vec u(2 * pairs);
  std::uint64_t index = 0;
  while (out.size() < n) {
    seq.point(index++, u);
    Vec v(m);
    for (std::size_t p = 0; p < pairs; ++p) {
      const double r = std::sqrt(-2.0 * std::log(std::max(u[2 * p], 1e-300)));
      const double t = kTwoPi * u[2 * p + 1];
      v[2 * p] = r * std::cos(t);
      if (2 * p + 1 < m) v[2 * p + 1] = r * std::sin(t);
    }
    const double len = norm(v);
    if (len < 1e-12) continue;
    for (double& x : v) x /= len;
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace boundscan
