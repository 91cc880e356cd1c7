#include "boundscan/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace boundscan {

bool boundary_point_less(const BoundaryPoint& u, const BoundaryPoint& v) {
  if (u.f != v.f) return u.f < v.f;
  if (u.a != v.a) return u.a < v.a;
  if (u.b != v.b) return u.b < v.b;
  if (u.k != v.k) return u.k < v.k;
  return u.x < v.x;
}

namespace {

double dist2(std::span<const double> u, std::span<const double> v) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = u[i] - v[i];
    s += d * d;
  }
  return s;
}

}  // namespace

std::vector<BoundaryPoint> dedup(std::vector<BoundaryPoint> points, double radius) {
  std::sort(points.begin(), points.end(), boundary_point_less);
  std::vector<BoundaryPoint> kept;
  const double r2 = radius * radius;
  for (BoundaryPoint& p : points) {
    const bool duplicate = std::any_of(kept.begin(), kept.end(), [&](const BoundaryPoint& q) {
      return dist2(p.f, q.f) <= r2;
    });
    if (!duplicate) kept.push_back(std::move(p));
  }
  return kept;
}

std::vector<Vec> image_cloud(const Problem& problem, std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("image_cloud: n must be >= 1");
  std::vector<Vec> out;
  out.reserve(n);
  for (const Vec& x : problem.sample(n, seed)) out.push_back(problem.evaluate(x));
  return out;
}

OccupancyGrid::OccupancyGrid(const std::vector<Vec>& cloud, double h) : h_(h) {
  if (!(h > 0.0)) throw std::invalid_argument("occupancy grid: cell size must be positive");
  if (cloud.empty()) throw std::invalid_argument("occupancy grid: empty cloud");
  const std::size_t m = cloud[0].size();
  if (m < 1 || m > 3) throw DimensionError("occupancy grid supports dimensions 1 to 3");
  Vec lo(m, kInf), hi(m, -kInf);
  for (const Vec& p : cloud) {
    if (p.size() != m) throw DimensionError("occupancy grid: mixed dimensions");
    for (std::size_t j = 0; j < m; ++j) {
      lo[j] = std::min(lo[j], p[j]);
      hi[j] = std::max(hi[j], p[j]);
    }
  }
  origin_.resize(m);
  dims_.resize(m);
  std::size_t total = 1;
  for (std::size_t j = 0; j < m; ++j) {
    origin_[j] = lo[j] - h;
    dims_[j] = static_cast<std::size_t>(std::floor((hi[j] - origin_[j]) / h)) + 2;
    total *= dims_[j];
  }
  occupied_.assign(total, false);
  for (const Vec& p : cloud) {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < m; ++j) {
      auto c = static_cast<std::size_t>(std::floor((p[j] - origin_[j]) / h));
      idx = idx * dims_[j] + std::min(c, dims_[j] - 2);
    }
    occupied_[idx] = true;
  }
}

std::size_t OccupancyGrid::occupied_count() const {
  return static_cast<std::size_t>(std::count(occupied_.begin(), occupied_.end(), true));
}

std::vector<Vec> OccupancyGrid::boundary_cells() const {
  const std::size_t m = dims_.size();
  std::vector<std::size_t> stride(m, 1);
  for (std::size_t j = m - 1; j-- > 0;) stride[j] = stride[j + 1] * dims_[j + 1];
  std::vector<Vec> out;
  std::vector<std::size_t> c(m);
  for (std::size_t idx = 0; idx < occupied_.size(); ++idx) {
    if (!occupied_[idx]) continue;
    std::size_t rest = idx;
    for (std::size_t j = 0; j < m; ++j) {
      c[j] = rest / stride[j];
      rest %= stride[j];
    }
    bool edge = false;
    for (std::size_t j = 0; j < m && !edge; ++j) {
      // Padding guarantees neighbors exist for occupied cells.
      edge = !occupied_[idx - stride[j]] || !occupied_[idx + stride[j]];
    }
    if (!edge) continue;
    Vec center(m);
    for (std::size_t j = 0; j < m; ++j) center[j] = origin_[j] + (static_cast<double>(c[j]) + 0.5) * h_;
    out.push_back(std::move(center));
  }
  return out;
}

std::vector<Vec> occupancy_boundary(const std::vector<Vec>& cloud, double h) {
  return OccupancyGrid(cloud, h).boundary_cells();
}

double directed_hausdorff(const std::vector<Vec>& from, const std::vector<Vec>& to) {
  if (from.empty() || to.empty()) throw std::invalid_argument("hausdorff: empty point set");
  double worst2 = 0.0;
  for (const Vec& p : from) {
    double best2 = kInf;
    for (const Vec& q : to) {
      best2 = std::min(best2, dist2(p, q));
      // p cannot raise the maximum any more.
      if (best2 <= worst2) break;
    }
    worst2 = std::max(worst2, best2);
  }
  return std::sqrt(worst2);
}

HausdorffResult hausdorff(const std::vector<Vec>& a, const std::vector<Vec>& b) {
  HausdorffResult r;
  r.d_ab = directed_hausdorff(a, b);
  r.d_ba = directed_hausdorff(b, a);
  r.sym = std::max(r.d_ab, r.d_ba);
  return r;
}

Vec nearest_distances(const std::vector<Vec>& from, const std::vector<Vec>& to) {
  if (to.empty()) return Vec(from.size(), kInf);
  Vec out(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    double best2 = kInf;
    for (const Vec& q : to) best2 = std::min(best2, dist2(from[i], q));
    out[i] = std::sqrt(best2);
  }
  return out;
}

}  // namespace boundscan
