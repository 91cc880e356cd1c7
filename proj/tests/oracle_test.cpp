#include "boundscan/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "boundscan/problems.hpp"

namespace boundscan {
namespace {

BoundaryPoint point(Vec f, std::size_t k = 1) {
  BoundaryPoint p;
  p.f = std::move(f);
  p.x = {0.0};
  p.a = {0.0, 0.0};
  p.b = {1.0, 0.0};
  p.k = k;
  return p;
}

TEST(Dedup, KeepsFirstInSortedOrder) {
  std::vector<BoundaryPoint> pts{point({1.0, 0.0}), point({0.0, 0.0}), point({0.005, 0.0}), point({1.0, 0.0}, 2)};
  const auto kept = dedup(pts, 0.01);
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0].f, (Vec{0.0, 0.0}));
  EXPECT_EQ(kept[1].f, (Vec{1.0, 0.0}));
  EXPECT_EQ(kept[1].k, 1u);
}

TEST(Dedup, OrderIndependent) {
  std::vector<BoundaryPoint> pts;
  for (int i = 0; i < 50; ++i) pts.push_back(point({std::cos(i * 0.1), std::sin(i * 0.1)}));
  auto reversed = pts;
  std::ranges::reverse(reversed);
  const auto a = dedup(pts, 0.15);
  const auto b = dedup(reversed, 0.15);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].f, b[i].f);
}

TEST(Hausdorff, KnownDistances) {
  const std::vector<Vec> a{{0, 0}, {1, 0}};
  const std::vector<Vec> b{{0, 0}, {1, 0}, {3, 0}};
  const HausdorffResult r = hausdorff(a, b);
  EXPECT_DOUBLE_EQ(r.d_ab, 0.0);
  EXPECT_DOUBLE_EQ(r.d_ba, 2.0);
  EXPECT_DOUBLE_EQ(r.sym, 2.0);
  EXPECT_DOUBLE_EQ(directed_hausdorff(b, a), 2.0);
  EXPECT_THROW(directed_hausdorff({}, a), std::invalid_argument);
  const Vec d = nearest_distances(b, a);
  EXPECT_EQ(d, (Vec{0.0, 0.0, 2.0}));
}

TEST(Occupancy, SquareBoundaryIsRing) {
  std::vector<Vec> cloud;
  for (int i = 0; i < 100; ++i)
    for (int j = 0; j < 100; ++j) cloud.push_back({(i + 0.5) / 100.0, (j + 0.5) / 100.0});
  const OccupancyGrid grid(cloud, 0.1);
  EXPECT_EQ(grid.occupied_count(), 100u);
  const auto ring = grid.boundary_cells();
  EXPECT_EQ(ring.size(), 36u);
  for (const Vec& c : ring) {
    const double edge = std::min({c[0], c[1], 1.0 - c[0], 1.0 - c[1]});
    EXPECT_LT(edge, 0.1);
  }
}

TEST(Occupancy, DiskBoundaryNearCircle) {
  const Problem d = disk(1.0);
  const auto boundary = occupancy_boundary(image_cloud(d, 200000, 0), 0.02);
  const auto exact = d.analytic_boundary(4000);
  EXPECT_LT(hausdorff(boundary, exact).sym, 0.05);
}

TEST(Occupancy, AnnulusHasInnerBoundary) {
  const Problem a = annulus(1.0, 2.0);
  const auto boundary = occupancy_boundary(image_cloud(a, 200000, 0), 0.02);
  std::size_t inner = 0;
  for (const Vec& c : boundary) inner += norm(c) < 1.5;
  EXPECT_GT(inner, 100u);
  EXPECT_LT(hausdorff(boundary, a.analytic_boundary(8000)).sym, 0.05);
}

TEST(Occupancy, RejectsHighDimension) {
  EXPECT_THROW(occupancy_boundary({{0, 0, 0, 0}}, 0.1), std::invalid_argument);
  EXPECT_THROW(occupancy_boundary({}, 0.1), std::invalid_argument);
}

}  // namespace
}  // namespace boundscan
