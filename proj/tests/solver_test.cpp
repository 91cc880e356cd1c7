#include "boundscan/solver.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "boundscan/scalarization.hpp"

namespace boundscan {
namespace {

SolverConfig config(std::uint64_t seed = 0) {
  SolverConfig c;
  c.n_starts = 6;
  c.pool_size = 1024;
  c.seed = seed;
  return c;
}

TEST(SolverConfig, Validation) {
  SolverConfig c;
  EXPECT_NO_THROW(c.validate());
  c.n_starts = 0;
  EXPECT_THROW(c.validate(), ConfigError);
  c = SolverConfig{};
  c.local_tol = 0.0;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Maximize, Paper2dFirstComponentMax) {
  const Problem p = paper_2d();
  const auto r = maximize([&](std::span<const double> x) { return p.evaluate(x)[0]; }, p, config());
  EXPECT_NEAR(r.best_value, std::sqrt(2.0), 1e-6);
  EXPECT_TRUE(p.feasible(r.best_x));
}

TEST(Maximize, ConstantObjective) {
  const Problem p = disk(1.0);
  const auto r = maximize([](std::span<const double>) { return 3.5; }, p, config());
  EXPECT_EQ(r.best_value, 3.5);
}

TEST(Maximize, ConcaveQuadratic) {
  const Problem p = expression_problem("box", {"x1", "x2"}, {-1, -1}, {1, 1});
  const auto r = maximize(
      [](std::span<const double> x) { return -(x[0] - 0.3) * (x[0] - 0.3) - 2 * (x[1] + 0.4) * (x[1] + 0.4); }, p,
      config());
  EXPECT_NEAR(r.best_value, 0.0, 1e-12);
  EXPECT_NEAR(r.best_x[0], 0.3, 1e-5);
  EXPECT_NEAR(r.best_x[1], -0.4, 1e-5);
}

TEST(Maximize, BoundaryOptimumStaysFeasible) {
  const Problem p = expression_problem("box", {"x1", "x2"}, {-1, -1}, {1, 1});
  const auto r = maximize([](std::span<const double> x) { return x[0] + 2 * x[1]; }, p, config());
  EXPECT_NEAR(r.best_value, 3.0, 1e-6);
  EXPECT_LE(r.best_value, 3.0);
  EXPECT_TRUE(p.feasible(r.best_x));
}

TEST(Maximize, Deterministic) {
  const Problem p = bean();
  auto obj = [&](std::span<const double> x) {
    const Vec f = p.evaluate(x);
    return h_value(f, ScalarizationParams({0.1, -0.3}, {0.0, -1.0}, 0.4));
  };
  const auto a = maximize(obj, p, config(5));
  const auto b = maximize(obj, p, config(5));
  EXPECT_EQ(a.best_value, b.best_value);
  EXPECT_EQ(a.best_x, b.best_x);
  EXPECT_EQ(a.evaluations, b.evaluations);
  ASSERT_EQ(a.all_local_optima.size(), b.all_local_optima.size());
}

TEST(Maximize, MoreStartsNeverWorse) {
  const Problem p = annulus(1.0, 2.0);
  auto obj = [&](std::span<const double> x) {
    return h_value(p.evaluate(x), ScalarizationParams({0.3, 0.2}, {0.6, -0.8}, 0.2));
  };
  double prev = -kInf;
  for (std::size_t n : {1u, 2u, 4u, 8u}) {
    SolverConfig c = config(2);
    c.n_starts = n;
    c.budget = 100000;
    const double v = maximize(obj, p, c).best_value;
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(Maximize, RespectsBudget) {
  const Problem p = bean();
  SolverConfig c = config();
  c.budget = 300;
  const auto r = maximize([&](std::span<const double> x) { return p.evaluate(x)[0]; }, p, c);
  EXPECT_LE(r.evaluations, c.pool_size + c.budget + 2 * p.dim_control() + 4);
}

TEST(OrthonormalComplement, IsOrthonormal) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (std::size_t m : {2u, 3u, 5u}) {
    Vec b(m);
    for (double& x : b) x = g(rng);
    const double n = norm(b);
    for (double& x : b) x /= n;
    const auto basis = orthonormal_complement(b);
    ASSERT_EQ(basis.size(), m - 1);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      EXPECT_NEAR(dot(basis[i], b), 0.0, 1e-14);
      for (std::size_t j = 0; j < basis.size(); ++j) EXPECT_NEAR(dot(basis[i], basis[j]), i == j ? 1.0 : 0.0, 1e-14);
    }
  }
}

TEST(TwoStage, DiskSupportValue) {
  const Problem d = disk(1.0);
  const ImagePool pool(d, 1024, 0);
  const Vec a{0, 0}, b{1, 0};
  const auto r = two_stage_maximize(d, a, b, 1.0, orthonormal_complement(b), config(), pool);
  EXPECT_NEAR(r.value, 1.0, 1e-6);
  const auto r2 = two_stage_maximize(d, a, b, 0.5, orthonormal_complement(b), config(), pool);
  EXPECT_NEAR(r2.value, 1.0, 1e-6);
}

TEST(TwoStage, SinglePointImage) {
  const Problem p = expression_problem("point", {"0.5", "-0.25"}, {0, 0}, {1, 1});
  const ImagePool pool(p, 256, 0);
  const Vec a{0, 0}, b{0.6, 0.8};
  const auto r = two_stage_maximize(p, a, b, 0.3, orthonormal_complement(b), config(), pool);
  EXPECT_NEAR(r.value, h_value(Vec{0.5, -0.25}, ScalarizationParams(a, b, 0.3)), 1e-8);
}

TEST(TwoStage, InnerHonorsConstraint) {
  const Problem d = disk(1.0);
  const ImagePool pool(d, 1024, 0);
  const Vec a{0, 0}, b{1, 0};
  const auto basis = orthonormal_complement(b);
  std::size_t evals = 0;
  const Vec l{0.6};
  const InnerResult r = two_stage_inner(d, a, b, basis, l, config(), pool, {}, evals);
  EXPECT_LE(r.residual, 1e-9);
  EXPECT_NEAR(r.value, 0.8, 1e-6);
  const Vec far{1.5};
  const InnerResult none = two_stage_inner(d, a, b, basis, far, config(), pool, {}, evals);
  EXPECT_TRUE(std::isinf(none.value) && none.value < 0);
}

TEST(TwoStage, AgreesWithDirectOnBean) {
  const Problem p = bean();
  const ImagePool pool(p, 2048, 0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const Vec a{u(rng), u(rng)};
    const double t = 3.2 * u(rng);
    const Vec b{std::cos(t), std::sin(t)};
    const double eta = 0.5;
    const ScalarizationParams params(a, b, eta);
    const auto direct = maximize_image([&](std::span<const double> f) { return h_value(f, params); }, p, pool,
                                       config());
    const auto two = two_stage_maximize(p, a, b, eta, orthonormal_complement(b), config(), pool);
    EXPECT_NEAR(two.value, direct.best_value, 1e-4 * (1 + std::abs(direct.best_value)));
  }
}

}  // namespace
}  // namespace boundscan
