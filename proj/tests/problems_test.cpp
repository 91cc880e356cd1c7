#include "boundscan/problems.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "boundscan/oracle.hpp"

namespace boundscan {
namespace {

using nlohmann::json;

TEST(Paper2d, ObjectiveValues) {
  const Problem p = paper_2d();
  EXPECT_EQ(p.dim_control(), 2u);
  EXPECT_EQ(p.dim_image(), 2u);
  const Vec f0 = p.evaluate(Vec{0.0, 0.0});
  EXPECT_DOUBLE_EQ(f0[0], 0.0);
  EXPECT_DOUBLE_EQ(f0[1], 0.0);
  const Vec f1 = p.evaluate(Vec{0.0, 1.0});
  EXPECT_DOUBLE_EQ(f1[0], std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(f1[1], std::cos(1.0) - std::exp(-1.0));
  EXPECT_TRUE(p.feasible(Vec{0.5, 0.5}));
  EXPECT_FALSE(p.feasible(Vec{0.6, 0.5}));
  EXPECT_FALSE(p.feasible(Vec{-0.01, 0.5}));
  EXPECT_NEAR(p.recommended_eta(), 1.0 - std::cos(std::numbers::pi / 8), 1e-15);
}

TEST(Paper2d, SamplesFeasibleAndInsideStatedBounds) {
  const Problem p = paper_2d();
  const ComponentBounds b = *p.analytic_bounds();
  double lo = kInf, hi = -kInf;
  for (const Vec& x : p.sample(100000, 3)) {
    ASSERT_TRUE(p.feasible(x));
    const Vec f = p.evaluate(x);
    lo = std::min(lo, f[0]);
    hi = std::max(hi, f[0]);
    for (std::size_t i = 0; i < 2; ++i) {
      EXPECT_GE(f[i], b.lower[i]);
      EXPECT_LE(f[i], b.upper[i]);
    }
  }
  EXPECT_GE(lo, 0.0);
  EXPECT_LE(hi, std::sqrt(2.0));
  EXPECT_LT(lo, 0.01);
  EXPECT_GT(hi, std::sqrt(2.0) - 0.01);
}

TEST(Problem, SamplePrefixProperty) {
  const Problem p = bean();
  const auto a = p.sample(50, 4);
  const auto b = p.sample(80, 4);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
  EXPECT_NE(p.sample(1, 5)[0], a[0]);
}

TEST(Disk, ImageFillsDisk) {
  const Problem d = disk(2.0);
  double rmax = 0.0;
  for (const Vec& f : image_cloud(d, 20000, 0)) rmax = std::max(rmax, norm(f));
  EXPECT_LE(rmax, 2.0 + 1e-12);
  EXPECT_GT(rmax, 1.98);
  for (const Vec& f : d.analytic_boundary(16)) EXPECT_NEAR(norm(f), 2.0, 1e-14);
}

TEST(Annulus, ImageFillsAnnulus) {
  const Problem a = annulus(1.0, 2.0);
  double rmin = kInf, rmax = 0.0;
  for (const Vec& f : image_cloud(a, 20000, 0)) {
    rmin = std::min(rmin, norm(f));
    rmax = std::max(rmax, norm(f));
  }
  EXPECT_GE(rmin, 1.0 - 1e-12);
  EXPECT_LE(rmax, 2.0 + 1e-12);
  EXPECT_LT(rmin, 1.01);
  EXPECT_GT(rmax, 1.99);
  EXPECT_THROW(annulus(2.0, 1.0), std::invalid_argument);
}

TEST(Bean, BoundaryRadius) {
  const Problem b = bean();
  for (const Vec& f : b.analytic_boundary(64)) {
    EXPECT_NEAR(norm(f), bean_radius(std::atan2(f[1], f[0])), 1e-12);
  }
  EXPECT_LT(bean_radius(-std::numbers::pi / 2), bean_radius(std::numbers::pi / 2));
}

TEST(Polygon, IdentityAndFeasibility) {
  const Problem p = polygon({{0, 0}, {2, 0}, {2, 2}, {1, 1}, {0, 2}});
  EXPECT_TRUE(p.feasible(Vec{1.0, 0.5}));
  EXPECT_FALSE(p.feasible(Vec{1.0, 1.5}));
  EXPECT_EQ(p.evaluate(Vec{0.3, 0.2}), (Vec{0.3, 0.2}));
  for (const Vec& x : p.sample(2000, 1)) EXPECT_TRUE(p.feasible(x));
  EXPECT_THROW(polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), std::invalid_argument);
}

TEST(ExpressionProblem, Box) {
  const Problem p = expression_problem("e", {"x1 + x2", "x1 * x2"}, {0, 0}, {1, 2});
  EXPECT_EQ(p.evaluate(Vec{0.5, 2.0}), (Vec{2.5, 1.0}));
  EXPECT_TRUE(p.feasible(Vec{1.0, 2.0}));
  EXPECT_FALSE(p.feasible(Vec{1.1, 0.0}));
  for (const Vec& x : p.sample(100, 0)) EXPECT_TRUE(p.feasible(x));
}

TEST(LoadProblem, Builtins) {
  EXPECT_EQ(load_problem(json{{"builtin", "paper_2d"}}).name(), "paper_2d");
  const Problem a = load_problem(json{{"builtin", "annulus"}, {"r_in", 0.5}, {"r_out", 1.5}});
  for (const Vec& f : a.analytic_boundary(8)) EXPECT_TRUE(std::abs(norm(f) - 0.5) < 1e-12 || std::abs(norm(f) - 1.5) < 1e-12);
  const Problem e = load_problem(json{{"expression",
                                       {{"objectives", {"x1", "-x1^2"}}, {"lower", {-1}}, {"upper", {"pi"}}}}});
  EXPECT_EQ(e.dim_image(), 2u);
  EXPECT_TRUE(e.feasible(Vec{3.1}));
}

TEST(LoadProblem, Errors) {
  EXPECT_THROW(load_problem(json{{"builtin", "nope"}}), ConfigError);
  EXPECT_THROW(load_problem(json{{"builtin", "disk"}, {"radius", 1}, {"extra", 2}}), ConfigError);
  EXPECT_THROW(load_problem(json{{"expression", {{"objectives", {"x1 +"}}, {"lower", {0}}, {"upper", {1}}}}}),
               ConfigError);
  EXPECT_THROW(load_problem(json::array()), ConfigError);
}

TEST(BuiltinProblems, Listed) {
  std::vector<std::string> names;
  for (const auto& b : builtin_problems()) names.push_back(b.name);
  for (const char* n : {"paper_2d", "disk", "annulus", "bean", "polygon"})
    EXPECT_NE(std::ranges::find(names, n), names.end()) << n;
}

}  // namespace
}  // namespace boundscan
