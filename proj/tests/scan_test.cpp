#include "boundscan/scan.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

namespace boundscan {
namespace {

using nlohmann::json;

json disk_doc() {
  return json::parse(R"({
    "problem": {"builtin": "disk"},
    "cone": {"eta": 1, "r": "inf"},
    "sweep": {"orients": 16, "bases": {"strategy": "explicit", "points": [[0, 0]]}},
    "solver": {"n_starts": 3, "pool_size": 512, "seed": 2}
  })");
}

std::string csv_text(const ScanResult& r, std::size_t dim_control) {
  std::ostringstream out;
  write_csv(r.cloud, dim_control, out);
  return out.str();
}

TEST(ScanConfig, Defaults) {
  const ScanConfig cfg = parse_scan_config(json::parse(R"({
    "problem": {"builtin": "paper_2d"}, "sweep": {"orients": 4}})"));
  EXPECT_NEAR(cfg.eta, 1.0 - std::cos(M_PI / 8), 1e-15);
  EXPECT_TRUE(std::isinf(cfg.r));
  EXPECT_EQ(cfg.strategy, BaseStrategy::kReduced);
  EXPECT_TRUE(cfg.auto_pivot);
  EXPECT_FALSE(cfg.k_max.has_value());
}

TEST(ScanConfig, ExpressionsAndPivots) {
  const ScanConfig cfg = parse_scan_config(json::parse(R"J({
    "problem": {"builtin": "paper_2d"},
    "cone": {"eta": "1-cos(pi/8)", "r": 0.9, "truncation": "closed_form"},
    "sweep": {"orients": {"count": 10, "seed": 4},
              "bases": {"pivot": 2, "counts": 5, "bounds": {"lower": [0, "-7/3"], "upper": ["sqrt(2)", "4/3"]}},
              "k_max": 7}})J"));
  EXPECT_NEAR(cfg.eta, 1.0 - std::cos(M_PI / 8), 1e-15);
  EXPECT_EQ(cfg.r, 0.9);
  EXPECT_EQ(cfg.truncation, Truncation::kClosedForm);
  EXPECT_EQ(cfg.pivots, (std::vector<std::size_t>{1}));
  EXPECT_EQ(cfg.counts, (std::vector<std::size_t>{5}));
  EXPECT_NEAR(cfg.bounds->lower[1], -7.0 / 3.0, 1e-15);
  EXPECT_EQ(*cfg.k_max, 7u);
  EXPECT_EQ(cfg.orient_seed, 4u);
}

bool rejected(const char* text) {
  try {
    parse_scan_config(json::parse(text));
  } catch (const ConfigError&) {
    return true;
  }
  return false;
}

TEST(ScanConfig, Errors) {
  const char* cases[] = {
      R"({"problem": {"builtin": "disk"}})",
      R"({"problem": {"builtin": "disk"}, "sweep": {"orients": 4}, "extra": 1})",
      R"({"problem": {"builtin": "disk"}, "cone": {"eta": 0}, "sweep": {"orients": 4}})",
      R"({"problem": {"builtin": "disk"}, "cone": {"r": -1}, "sweep": {"orients": 4}})",
      R"({"problem": {"builtin": "disk"}, "sweep": {"orients": 0}})",
      R"({"problem": {"builtin": "disk"}, "sweep": {"orients": 4, "bases": {"pivot": 3}}})",
      R"({"problem": {"builtin": "disk"}, "sweep": {"orients": 4, "bases": {"strategy": "x"}}})",
      R"({"problem": {"builtin": "disk"}, "sweep": {"orients": 4}, "solver": {"n_starts": 0}})",
      R"({"problem": {"builtin": "nope"}, "sweep": {"orients": 4}})",
  };
  for (const char* text : cases) EXPECT_TRUE(rejected(text)) << text;
}

TEST(ScanConfig, DigestTracksSettings) {
  json doc = disk_doc();
  const std::string d0 = parse_scan_config(doc).digest();
  EXPECT_EQ(d0, parse_scan_config(doc).digest());
  doc["solver"]["seed"] = 3;
  EXPECT_NE(d0, parse_scan_config(doc).digest());
}

TEST(Scan, DiskRecoversSupportPoints) {
  const ScanConfig cfg = parse_scan_config(disk_doc());
  const ScanResult r = scan(cfg);
  EXPECT_EQ(r.failed_cells, 0u);
  ASSERT_EQ(r.cloud.points.size(), 16u);
  for (const BoundaryPoint& p : r.cloud.points) {
    EXPECT_NEAR(norm(p.f), 1.0, 1e-6);
    EXPECT_NEAR(dot(p.f, p.b), 1.0, 1e-6);
  }
  EXPECT_EQ(r.cloud.config_digest, cfg.digest());
}

TEST(Scan, DeterministicCsv) {
  json doc = disk_doc();
  doc["problem"] = {{"builtin", "bean"}};
  doc["cone"] = {{"eta", 0.5}, {"r", "inf"}};
  doc["sweep"]["bases"] = {{"strategy", "reduced"}, {"counts", 3}};
  const ScanConfig cfg = parse_scan_config(doc);
  const std::string a = csv_text(scan(cfg), 2);
  const std::string b = csv_text(scan(cfg), 2);
  EXPECT_EQ(a, b);
  EXPECT_GT(a.size(), 100u);
}

TEST(Scan, ReportedPointsPassRecheck) {
  json doc = disk_doc();
  doc["problem"] = {{"builtin", "annulus"}};
  doc["cone"] = {{"eta", 0.3}, {"r", 0.6}};
  doc["sweep"]["orients"] = 8;
  doc["sweep"]["bases"] = {{"strategy", "explicit"}, {"points", {{1.5, 0.0}, {0.0, 0.0}}}};
  const ScanConfig cfg = parse_scan_config(doc);
  const ScanResult r = scan(cfg);
  ASSERT_FALSE(r.cloud.points.empty());
  for (const BoundaryPoint& p : r.cloud.points) {
    const double rad = norm(p.f);
    EXPECT_TRUE(std::abs(rad - 1.0) < 1e-5 || std::abs(rad - 2.0) < 1e-5) << rad;
  }
  bool inner = false;
  for (const BoundaryPoint& p : r.cloud.points) inner |= norm(p.f) < 1.5;
  EXPECT_TRUE(inner);
}

TEST(ScanIo, CsvRoundTrip) {
  const ScanConfig cfg = parse_scan_config(disk_doc());
  const ScanResult r = scan(cfg);
  const auto path = std::filesystem::temp_directory_path() / "boundscan_roundtrip.csv";
  write_csv(r.cloud, 2, path);
  const BoundaryCloud back = read_csv(path);
  ASSERT_EQ(back.points.size(), r.cloud.points.size());
  for (std::size_t i = 0; i < back.points.size(); ++i) {
    EXPECT_EQ(back.points[i].f, r.cloud.points[i].f);
    EXPECT_EQ(back.points[i].x, r.cloud.points[i].x);
    EXPECT_EQ(back.points[i].k, r.cloud.points[i].k);
  }
  std::filesystem::remove(path);
}

TEST(ScanIo, JsonSummary) {
  const ScanConfig cfg = parse_scan_config(disk_doc());
  const json j = result_to_json(cfg, scan(cfg));
  EXPECT_EQ(j.at("config_digest"), cfg.digest());
  EXPECT_EQ(j.at("points").size(), 16u);
  EXPECT_EQ(j.at("solver_statistics").at("failed_cells"), 0);
  EXPECT_FALSE(j.contains("wall_time"));
}

TEST(AutoKMax, CoversDiameter) {
  const std::vector<Vec> images{{0, 0}, {2, 0}, {0, 2}};
  const Vec a{10, 0};
  const std::size_t k = auto_k_max(images, a, 0.3);
  EXPECT_GE(k * 0.3, std::sqrt(8.0) + norm(Vec{10 - 2.0 / 3, -2.0 / 3}) - 1e-12);
}

TEST(Verify, AnalyticBoundaryPasses) {
  const Problem d = disk(1.0);
  VerifyOptions opt;
  opt.n = 100000;
  opt.h = 0.02;
  const VerifyReport rep = verify_cloud(d, d.analytic_boundary(400), opt);
  EXPECT_TRUE(rep.passed);
  EXPECT_LT(rep.soundness, 0.05);
  EXPECT_LT(rep.coverage, 0.05);
  const VerifyReport half = verify_cloud(d, {{1.0, 0.0}}, opt);
  EXPECT_FALSE(half.covered);
  EXPECT_FALSE(half.uncovered.empty());
}

}  // namespace
}  // namespace boundscan
