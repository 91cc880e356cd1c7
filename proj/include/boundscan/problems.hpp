#ifndef BOUNDSCAN_PROBLEMS_HPP_
#define BOUNDSCAN_PROBLEMS_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "boundscan/bounds.hpp"
#include "boundscan/types.hpp"
#include "json.hpp"

namespace boundscan {

// Objective map f: A -> R^m together with what the solvers need to search A:
// a feasibility predicate and a map from the unit cube onto A that turns a
// low-discrepancy sequence into feasible controls. Immutable after
// construction; every callable must be pure and reentrant.
class Problem {
 public:
  using ObjectiveFn = std::function<void(std::span<const double> x, std::span<double> f)>;
  using FeasibleFn = std::function<bool(std::span<const double> x)>;
  using UnitMapFn = std::function<void(std::span<const double> u, std::span<double> x)>;
  using BoundarySampler = std::function<std::vector<Vec>(std::size_t n)>;

  struct Spec {
    std::string name;
    std::string description;
    std::size_t dim_control = 0;
    std::size_t dim_image = 0;
    ObjectiveFn objective;
    FeasibleFn feasible;
    // Maps [0,1)^dim_control onto A; its image must be feasible.
    UnitMapFn unit_map;
    // Typical extent of A per control coordinate; sets local search steps.
    Vec control_scale;
    double recommended_eta = 1.0;
    double recommended_r = kInf;
    std::optional<ComponentBounds> analytic_bounds;
    // Dense samples of the exact boundary, when known in closed form.
    BoundarySampler boundary;
  };

  explicit Problem(Spec spec);

  const std::string& name() const { return spec_.name; }
  const std::string& description() const { return spec_.description; }
  std::size_t dim_control() const { return spec_.dim_control; }
  std::size_t dim_image() const { return spec_.dim_image; }
  const Vec& control_scale() const { return spec_.control_scale; }
  double recommended_eta() const { return spec_.recommended_eta; }
  double recommended_r() const { return spec_.recommended_r; }
  const std::optional<ComponentBounds>& analytic_bounds() const { return spec_.analytic_bounds; }
  bool has_analytic_boundary() const { return static_cast<bool>(spec_.boundary); }

  void evaluate(std::span<const double> x, std::span<double> f) const { spec_.objective(x, f); }
  Vec evaluate(std::span<const double> x) const;
  bool feasible(std::span<const double> x) const { return spec_.feasible(x); }
  void map_unit(std::span<const double> u, std::span<double> x) const { spec_.unit_map(u, x); }

  // `count` feasible controls from a shifted Halton sequence; deterministic
  // in `seed`, and sample(n, s) is a prefix of sample(n + 1, s).
  std::vector<Vec> sample(std::size_t count, std::uint64_t seed) const;

  // Points on the exact boundary. Throws if the boundary is not known.
  std::vector<Vec> analytic_boundary(std::size_t n) const;

 private:
  Spec spec_;
};

// Objective of the worked 2D example: f1 = sqrt(x1^2 + 2 x2^2),
// f2 = cos(2 x1 + x2^2) - exp(-x2^2) + sin(3 x1 x2)/3 on the simplex
// {x >= 0, x1 + x2 <= 1}.
Problem paper_2d();

// Image is the closed disk of the given radius:
// f = radius (1 - cos s)/2 (cos t, sin t), controls (s, t) in R^2.
Problem disk(double radius = 1.0);

// Image is {r_in <= |f| <= r_out}:
// f = (c - w cos s)(cos t, sin t), c = (r_in + r_out)/2, w = (r_out - r_in)/2.
Problem annulus(double r_in = 1.0, double r_out = 2.0);

// Star-shaped bean with a single concave inlet at the bottom. Boundary curve
// R(t)(cos t, sin t) with R(t) = 1 + 0.2 cos 2t + 0.15 sin t; the interior is
// parameterized as in `disk` with radius R(t).
double bean_radius(double t);
Problem bean();

// Identity map on a simple polygon (vertices in either orientation). The
// sampler triangulates the polygon by ear clipping and samples by area.
Problem polygon(std::vector<std::array<double, 2>> vertices);

// Box-constrained problem whose objectives are expressions in x1..xd.
Problem expression_problem(std::string name, const std::vector<std::string>& objectives,
                           Vec lower, Vec upper);

// Builds a problem from the `problem` section of a scan config, either
// {"builtin": name, ...parameters} or
// {"expression": {"objectives": [...], "lower": [...], "upper": [...]}}.
// Unknown keys, names and malformed expressions raise ConfigError.
Problem load_problem(const nlohmann::json& spec);

struct BuiltinInfo {
  std::string name;
  std::string parameters;
  std::string description;
};
std::vector<BuiltinInfo> builtin_problems();

}  // namespace boundscan

#endif  // BOUNDSCAN_PROBLEMS_HPP_
