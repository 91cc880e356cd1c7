#ifndef BOUNDSCAN_ORACLE_HPP_
#define BOUNDSCAN_ORACLE_HPP_

#include <cstdint>
#include <string>

#include "boundscan/problems.hpp"

namespace boundscan {

struct BoundaryPoint {
  Vec f;
  Vec x;
  Vec a;
  Vec b;
  std::size_t k = 1;
  double value = 0.0;
};

struct BoundaryCloud {
  std::vector<BoundaryPoint> points;
  std::string config_digest;
  std::string problem_name;
};

// Orders by f, then a, b, k, x (lexicographic).
bool boundary_point_less(const BoundaryPoint& u, const BoundaryPoint& v);

// Sorts, then keeps each point unless an already kept point has its image
// within `radius`.
std::vector<BoundaryPoint> dedup(std::vector<BoundaryPoint> points, double radius);

std::vector<Vec> image_cloud(const Problem& problem, std::size_t n, std::uint64_t seed);

// Rasterized image set with one empty cell of padding on every side.
class OccupancyGrid {
 public:
  OccupancyGrid(const std::vector<Vec>& cloud, double h);

  std::size_t dim() const { return origin_.size(); }
  double cell() const { return h_; }
  const Vec& origin() const { return origin_; }
  const std::vector<std::size_t>& extents() const { return dims_; }
  std::size_t occupied_count() const;

  // Centers of occupied cells with an unoccupied face neighbor, in cell
  // index order.
  std::vector<Vec> boundary_cells() const;

 private:
  Vec origin_;
  double h_;
  std::vector<std::size_t> dims_;
  std::vector<bool> occupied_;
};

// Supports m <= 3.
std::vector<Vec> occupancy_boundary(const std::vector<Vec>& cloud, double h);

struct HausdorffResult {
  double d_ab = 0.0;
  double d_ba = 0.0;
  double sym = 0.0;
};

double directed_hausdorff(const std::vector<Vec>& from, const std::vector<Vec>& to);
HausdorffResult hausdorff(const std::vector<Vec>& a, const std::vector<Vec>& b);

// Distance from each point of `from` to its nearest point of `to`.
Vec nearest_distances(const std::vector<Vec>& from, const std::vector<Vec>& to);

}  // namespace boundscan

#endif  // BOUNDSCAN_ORACLE_HPP_
