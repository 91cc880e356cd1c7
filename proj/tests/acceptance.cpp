// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failures (capped at 1).
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "boundscan/grid_function.hpp"
#include "boundscan/oracle.hpp"
#include "boundscan/reduction.hpp"
#include "boundscan/scalarization.hpp"
#include "boundscan/scan.hpp"

#ifndef BOUNDSCAN_CONFIG_DIR
#define BOUNDSCAN_CONFIG_DIR "configs"
#endif

namespace bs = boundscan;
using bs::Vec;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

bs::ScanConfig config(const std::string& name) {
  return bs::load_scan_config(std::filesystem::path(BOUNDSCAN_CONFIG_DIR) / name);
}

std::vector<Vec> images(const bs::BoundaryCloud& cloud) {
  std::vector<Vec> out;
  out.reserve(cloud.points.size());
  for (const auto& p : cloud.points) out.push_back(p.f);
  return out;
}

Vec random_unit(std::mt19937_64& rng, std::size_t m) {
  std::normal_distribution<double> g;
  Vec v(m);
  for (double& x : v) x = g(rng);
  const double n = bs::norm(v);
  for (double& x : v) x /= n;
  return v;
}

Outcome paper_2d_reproduction() {
  const bs::ScanConfig cfg = config("paper_2d.json");
  const bs::ScanResult r = bs::scan(cfg);
  const bs::Problem problem = bs::load_problem(cfg.problem);
  bs::VerifyOptions opt;
  opt.n = 1000000;
  opt.h = 0.01;
  opt.delta_sound = 0.05;
  opt.delta_cover = 0.15;
  opt.seed = cfg.verify_seed;
  const bs::VerifyReport rep = bs::verify_cloud(problem, images(r.cloud), opt);
  return {rep.passed && r.failed_cells == 0,
          fmt("%zu points, soundness %.4f (<= 0.05), coverage %.4f (<= 0.15), failed cells %zu",
              r.cloud.points.size(), rep.soundness, rep.coverage, r.failed_cells)};
}

Outcome convex_recovery() {
  const bs::ScanConfig cfg = config("disk.json");
  const bs::ScanResult r = bs::scan(cfg);
  double radial = 0.0, angular = 0.0;
  std::set<Vec> orients;
  for (const auto& p : r.cloud.points) {
    orients.insert(p.b);
    radial = std::max(radial, std::abs(bs::norm(p.f) - 1.0));
    const double cross = p.f[0] * p.b[1] - p.f[1] * p.b[0];
    angular = std::max(angular, std::abs(std::atan2(cross, bs::dot(p.f, p.b))));
  }
  const bool one_each = orients.size() == cfg.orient_count;
  const bool ok = r.cloud.points.size() == 64 && one_each && radial <= 1e-6 && angular <= 1e-6;
  return {ok, fmt("%zu points (64), one per orient %s, max radial error %.2e, max angular error %.2e",
                  r.cloud.points.size(), one_each ? "yes" : "no", radial, angular)};
}

Outcome nonconvex_necessity() {
  const bs::ScanConfig cfg = config("annulus.json");
  const bs::Problem problem = bs::load_problem(cfg.problem);
  const std::vector<Vec> boundary = problem.analytic_boundary(4000);
  std::vector<Vec> inner, outer;
  for (const Vec& f : boundary) (bs::norm(f) < 1.5 ? inner : outer).push_back(f);

  const auto t0 = std::chrono::steady_clock::now();
  const bs::ScanResult truncated = bs::scan(cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const std::vector<Vec> cloud = images(truncated.cloud);

  bs::VerifyOptions opt;
  opt.n = cfg.verify_n;
  opt.h = cfg.verify_h;
  opt.seed = cfg.verify_seed;
  const bs::VerifyReport rep = bs::verify_cloud(problem, cloud, opt);
  const double inner_cov = bs::directed_hausdorff(inner, cloud);
  const double outer_cov = bs::directed_hausdorff(outer, cloud);

  bs::ScanConfig untruncated = cfg;
  untruncated.r = bs::kInf;
  const std::vector<Vec> cloud_inf = images(bs::scan(untruncated).cloud);
  const double inner_inf = cloud_inf.empty() ? bs::kInf : bs::directed_hausdorff(inner, cloud_inf);

  const bool ok = rep.coverage <= 0.1 && inner_cov <= 0.1 && outer_cov <= 0.1 && inner_inf > 0.2;
  return {ok, fmt("r=0.6: oracle->cloud %.4f, inner %.4f, outer %.4f (<= 0.1), %.1fs; r=inf: inner %.4f (> 0.2)",
                  rep.coverage, inner_cov, outer_cov, secs, inner_inf)};
}

double bisection_root(const Vec& d, const Vec& b, double eta) {
  auto q = [&](double y) {
    Vec r(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) r[i] = d[i] - y * b[i];
    return bs::dot(r, b) - (1.0 - eta) * bs::norm(r);
  };
  double hi = bs::dot(d, b);
  double lo = hi - 1.0;
  while (q(lo) < 0) lo = hi - 2.0 * (hi - lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (q(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

Outcome cone_boundary_identity() {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_real_distribution<double> e(0.01, 1.0);
  std::uniform_int_distribution<std::size_t> dim(2, 6);
  std::size_t cases = 0, attempts = 0;
  double worst_residual = 0.0, worst_root = 0.0;
  while (cases < 10000) {
    ++attempts;
    const std::size_t m = dim(rng);
    Vec f(m), a(m);
    for (std::size_t i = 0; i < m; ++i) {
      f[i] = u(rng);
      a[i] = u(rng);
    }
    const bs::ScalarizationParams p(a, random_unit(rng, m), e(rng), 3.0 * (0.5 + e(rng)),
                                    1 + attempts % 8);
    const double y = bs::h_value(f, p);
    if (!(y > 0.0 && y < p.cap())) continue;
    ++cases;
    const Vec d = bs::subtract(f, a);
    Vec r(m);
    for (std::size_t i = 0; i < m; ++i) r[i] = d[i] - y * p.orient()[i];
    const double res = std::abs((1.0 - p.sharpness()) * bs::norm(r) - bs::dot(r, p.orient()));
    worst_residual = std::max(worst_residual, res / (1.0 + bs::norm(d)));
    worst_root = std::max(worst_root, std::abs(y - bisection_root(d, p.orient(), p.sharpness())));
  }
  return {worst_residual <= 1e-9 && worst_root <= 1e-9,
          fmt("%zu cases, max relative residual %.2e (<= 1e-9), max |H - bisection| %.2e (<= 1e-9)", cases,
              worst_residual, worst_root)};
}

Outcome theta_values() {
  const double t1 = bs::theta(1.0);
  const double t2 = bs::theta(1.0 - std::cos(std::numbers::pi / 8.0));
  const double t3 = bs::theta(1.0 - 1.0 / std::sqrt(2.0));
  const double e2 = std::abs(t2 - (1.0 + std::sqrt(2.0)));
  const double e3 = std::abs(t3 - 1.0);
  return {t1 == 0.0 && e2 <= 1e-12 && e3 <= 1e-12,
          fmt("theta(1) = %g, |theta(1-cos(pi/8)) - (1+sqrt2)| = %.1e, |theta(1-1/sqrt2) - 1| = %.1e", t1, e2, e3)};
}

struct ReductionCase {
  const char* name;
  nlohmann::json problem;
  double eta;
  double r;
  std::size_t orients;
  std::size_t reduced_count;
  std::vector<std::size_t> box_counts;
  double h;
};

Outcome reduction_property() {
  const std::vector<ReductionCase> cases{
      {"disk", {{"builtin", "disk"}}, 0.5, bs::kInf, 200, 9, {9, 9}, 0.02},
      {"annulus", {{"builtin", "annulus"}}, 0.3, 0.6, 160, 13, {9, 9}, 0.02},
      {"paper_2d", {{"builtin", "paper_2d"}}, 1.0 - std::cos(std::numbers::pi / 8), bs::kInf, 400, 17, {17, 17}, 0.01},
  };
  bool ok = true;
  std::string detail;
  for (const ReductionCase& c : cases) {
    bs::ScanConfig reduced;
    reduced.problem = c.problem;
    reduced.eta = c.eta;
    reduced.r = c.r;
    reduced.orient_count = c.orients;
    reduced.strategy = bs::BaseStrategy::kReduced;
    reduced.counts = {c.reduced_count};
    reduced.dedup_eps = c.h / 4;
    reduced.solver.n_starts = 6;
    reduced.solver.seed = 1;
    bs::ScanConfig box = reduced;
    box.strategy = bs::BaseStrategy::kBox;
    box.counts = c.box_counts;
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<Vec> a = images(bs::scan(reduced).cloud);
    const std::vector<Vec> b = images(bs::scan(box).cloud);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double d = (a.empty() || b.empty()) ? bs::kInf : bs::hausdorff(a, b).sym;
    ok = ok && d <= 2 * c.h;
    detail += fmt("%s %.4f (<= %.2f, %zu vs %zu pts, %.1fs); ", c.name, d, 2 * c.h, a.size(), b.size(), secs);
  }
  detail.resize(detail.size() - 2);
  return {ok, detail};
}

Outcome two_stage_agreement() {
  bool ok = true;
  std::string detail;
  for (const char* name : {"disk", "paper_2d"}) {
    const bs::Problem problem = bs::load_problem({{"builtin", name}});
    bs::SolverConfig cfg;
    cfg.n_starts = 6;
    cfg.seed = 2;
    const bs::ImagePool pool(problem, cfg.pool_size, cfg.seed);
    const bs::ComponentBounds bounds = bs::component_bounds(problem, 10000, 0);
    std::mt19937_64 rng(name[0]);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      Vec a(2);
      for (std::size_t i = 0; i < 2; ++i) {
        const double span = bounds.upper[i] - bounds.lower[i];
        a[i] = bounds.lower[i] - 0.5 * span + 2.0 * span * unit(rng);
      }
      const Vec b = random_unit(rng, 2);
      const double eta = 0.05 + 0.95 * unit(rng);
      const bs::ScalarizationParams p(a, b, eta);
      const double direct =
          bs::maximize_image([&](std::span<const double> f) { return bs::h_value(f, p); }, problem, pool, cfg)
              .best_value;
      const double two = bs::two_stage_maximize(problem, a, b, eta, bs::orthonormal_complement(b), cfg, pool).value;
      worst = std::max(worst, std::abs(two - direct) / (1.0 + std::abs(direct)));
    }
    ok = ok && worst <= 1e-4;
    detail += fmt("%s max relative gap %.2e; ", name, worst);
  }
  detail += "(<= 1e-4)";
  return {ok, detail};
}

Outcome cb_root_finder() {
  const auto grid = std::make_shared<const bs::Grid>(bs::Grid::trapezoid(0.0, 1.0, 64));
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> e(0.01, 1.0);
  double worst_residual = 0.0, worst_linear = 0.0;
  std::size_t monotone_violations = 0, probes = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Vec fv(64), av(64), bv(64);
    const double scale = std::pow(10.0, std::uniform_real_distribution<double>(-2, 2)(rng));
    for (std::size_t i = 0; i < 64; ++i) {
      fv[i] = scale * g(rng);
      av[i] = scale * g(rng);
      bv[i] = g(rng) + (trial % 3 == 0 ? 2.0 : 0.0);
    }
    double s = 0.0;
    for (double v : bv) s = std::max(s, std::abs(v));
    for (double& v : bv) v /= s;
    const bs::GridFunction f(grid, fv), a(grid, av), b(grid, bv);
    const double eta = trial % 10 == 0 ? 1.0 : e(rng);
    const bs::CbRootReport rep = bs::cb_h_solve(f, a, b, eta);
    worst_residual = std::max(worst_residual, std::abs(bs::cb_g(f, a, b, eta, rep.y)) / (1.0 + std::abs(rep.y)));
    auto pr = rep.probes;
    std::ranges::sort(pr);
    probes += pr.size();
    for (std::size_t i = 1; i < pr.size(); ++i)
      if (pr[i].first > pr[i - 1].first && !(pr[i].second < pr[i - 1].second)) ++monotone_violations;
    if (eta == 1.0) {
      double y0 = 0.0;
      for (std::size_t i = 0; i < 64; ++i) y0 += grid->weights()[i] * (fv[i] - av[i]) * bv[i];
      y0 *= bs::cb_scaling_factor(b);
      worst_linear = std::max(worst_linear, std::abs(rep.y - y0) / (1.0 + std::abs(y0)));
    }
  }
  return {worst_residual <= 1e-9 && monotone_violations == 0 && worst_linear <= 1e-12,
          fmt("1000 cases, max |g(y)|/(1+|y|) %.2e (<= 1e-9), %zu monotonicity violations over %zu probes, "
              "eta=1 max relative error %.2e (<= 1e-12)",
              worst_residual, monotone_violations, probes, worst_linear)};
}

Outcome l2_identity() {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    Vec f(8), a(8);
    for (std::size_t i = 0; i < 8; ++i) {
      f[i] = g(rng);
      a[i] = g(rng);
    }
    const Vec b = random_unit(rng, 8);
    const double eta = std::uniform_real_distribution<double>(0.01, 1.0)(rng);
    worst = std::max(worst, std::abs(bs::l2_h_value(f, a, b, eta) - bs::h_value(f, bs::ScalarizationParams(a, b, eta))));
  }
  return {worst <= 1e-14, fmt("10000 cases, max difference %.1e (<= 1e-14)", worst)};
}

std::string csv_bytes(const bs::ScanConfig& cfg, std::size_t threads) {
  const bs::ScanResult r = bs::scan(cfg, {threads});
  const bs::Problem problem = bs::load_problem(cfg.problem);
  const auto path = std::filesystem::temp_directory_path() /
                    ("boundscan_acceptance_" + std::to_string(threads) + ".csv");
  bs::write_csv(r.cloud, problem.dim_control(), path);
  std::ifstream in(path, std::ios::binary);
  std::ostringstream bytes;
  bytes << in.rdbuf();
  std::filesystem::remove(path);
  return bytes.str();
}

Outcome determinism() {
  const bs::ScanConfig cfg = config("paper_2d.json");
  const std::string first = csv_bytes(cfg, 1);
  const std::string second = csv_bytes(cfg, 1);
  const std::string threaded = csv_bytes(cfg, 3);
  return {!first.empty() && first == second && first == threaded,
          fmt("%zu bytes; second run %s, 3-thread run %s", first.size(), first == second ? "identical" : "differs",
              first == threaded ? "identical" : "differs")};
}

}  // namespace

// Optional arguments select criteria by number.
int main(int argc, char** argv) {
  std::set<std::string> only(argv + 1, argv + argc);
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"1 paper_2d sweep reproduction", paper_2d_reproduction},
      {"2 convex recovery on the disk", convex_recovery},
      {"3 truncated cones reach the annulus hole", nonconvex_necessity},
      {"4 cone-boundary residual and bisection root", cone_boundary_identity},
      {"5 theta spot values", theta_values},
      {"6 reduced vs unrestricted base sweeps", reduction_property},
      {"7 two-stage vs direct maximization", two_stage_agreement},
      {"8 C_b root finder", cb_root_finder},
      {"9 L2 coefficient identity", l2_identity},
      {"10 byte-identical CSV", determinism},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const std::string number(name, std::strchr(name, ' '));
    if (!only.empty() && !only.contains(number)) continue;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.passed;
    std::printf("%s criterion %s: %s\n", o.passed ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
