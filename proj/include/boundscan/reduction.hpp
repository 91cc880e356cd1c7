#ifndef BOUNDSCAN_REDUCTION_HPP_
#define BOUNDSCAN_REDUCTION_HPP_

#include <cstdint>
#include <string>
#include <variant>

#include "boundscan/bounds.hpp"
#include "boundscan/problems.hpp"

namespace boundscan {

// Componentwise min/max of f over n_samples low-discrepancy controls, each
// side pushed out by `widen` times the sampled range.
ComponentBounds component_bounds(const Problem& problem, std::size_t n_samples, std::uint64_t seed,
                                 double widen = 0.01);

// Box of base points; fixed coordinates have lo == hi.
struct ParamBox {
  Vec lo;
  Vec hi;
  std::vector<bool> fixed;

  std::size_t dim() const { return lo.size(); }
  std::vector<std::size_t> free_coordinates() const;
  bool contains(std::span<const double> a, double tol = 1e-12) const;
};

// Coordinates are 0-based here; configs use 1-based pivots.
//
// Pivot a_iota = lower_iota if b_iota >= 0, else upper_iota. For i != iota,
// a_i ranges over [lower_i - max(|lower_iota| b_i, |upper_iota| b_i),
//                  upper_i - min(|lower_iota| b_i, |upper_iota| b_i)].
ParamBox parameter_range(const ComponentBounds& bounds, std::span<const double> b, std::size_t iota);

// Same pivot, with every free interval widened to its union over all unit b:
// [lower_i - M, upper_i + M], M = max(|lower_iota|, |upper_iota|).
ParamBox parameter_range_envelope(const ComponentBounds& bounds, std::span<const double> b,
                                  std::size_t iota);

struct Infeasible {
  // "pivot_membership" or "free_intersection".
  std::string condition;
  std::string detail;
};

using IntersectionResult = std::variant<ParamBox, Infeasible>;

// Multi-pivot box: every iota in `pivots` fixed by the pivot rule, free
// coordinates get the intersection of the single-pivot intervals.
IntersectionResult parameter_range_intersection(const ComponentBounds& bounds,
                                                std::span<const double> b,
                                                const std::vector<std::size_t>& pivots);

// Cartesian grid over the free coordinates of `box` (in increasing index
// order), endpoints included, count 1 meaning the midpoint. Odometer order
// with the last free coordinate varying fastest.
std::vector<Vec> sample_param_grid(const ParamBox& box, const std::vector<std::size_t>& counts);

// Coordinate with the smallest range, ties to the lower index.
std::size_t smallest_range_coordinate(const ComponentBounds& bounds);

}  // namespace boundscan

#endif  // BOUNDSCAN_REDUCTION_HPP_
