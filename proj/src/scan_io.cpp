#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "boundscan/scan.hpp"

namespace boundscan {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void append(std::string& line, const Vec& v) {
  for (double x : v) {
    line += fmt(x);
    line += ',';
  }
}

}  // namespace

void write_csv(const BoundaryCloud& cloud, std::size_t dim_control, std::ostream& out) {
  const std::size_t m = cloud.points.empty() ? 0 : cloud.points[0].f.size();
  std::string header;
  auto names = [&](const char* prefix, std::size_t n) {
    for (std::size_t i = 1; i <= n; ++i) header += std::string(prefix) + std::to_string(i) + ",";
  };
  names("f_", m);
  names("x_", dim_control);
  header += "k,V,";
  names("a_", m);
  names("b_", m);
  header.pop_back();
  out << header << '\n';
  for (const BoundaryPoint& p : cloud.points) {
    std::string line;
    append(line, p.f);
    append(line, p.x);
    line += std::to_string(p.k) + ",";
    line += fmt(p.value) + ",";
    append(line, p.a);
    append(line, p.b);
    line.pop_back();
    out << line << '\n';
  }
}

void write_csv(const BoundaryCloud& cloud, std::size_t dim_control, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  write_csv(cloud, dim_control, out);
}

BoundaryCloud read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("'" + path.string() + "' is empty");
  std::size_t m = 0, d = 0;
  {
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, ',')) {
      if (col.rfind("f_", 0) == 0) ++m;
      if (col.rfind("x_", 0) == 0) ++d;
    }
  }
  BoundaryCloud cloud;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<double> v;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) v.push_back(std::strtod(cell.c_str(), nullptr));
    if (v.size() != 3 * m + d + 2)
      throw std::runtime_error("'" + path.string() + "' row " + std::to_string(row) + ": wrong column count");
    BoundaryPoint p;
    auto take = [&](std::size_t from, std::size_t n) {
      return Vec(v.begin() + static_cast<std::ptrdiff_t>(from), v.begin() + static_cast<std::ptrdiff_t>(from + n));
    };
    p.f = take(0, m);
    p.x = take(m, d);
    p.k = static_cast<std::size_t>(v[m + d]);
    p.value = v[m + d + 1];
    p.a = take(m + d + 2, m);
    p.b = take(2 * m + d + 2, m);
    cloud.points.push_back(std::move(p));
  }
  return cloud;
}

nlohmann::json result_to_json(const ScanConfig& cfg, const ScanResult& result) {
  using nlohmann::json;
  json points = json::array();
  for (const BoundaryPoint& p : result.cloud.points)
    points.push_back({{"f", p.f}, {"x", p.x}, {"a", p.a}, {"b", p.b}, {"k", p.k}, {"V", p.value}});
  json cells = json::array();
  for (const CellDiagnostic& c : result.cells) {
    json j = {{"orient_index", c.orient_index}, {"base_index", c.base_index}, {"a", c.a}, {"b", c.b},
              {"k_max", c.k_max}, {"witnesses", c.witnesses}, {"evaluations", c.evaluations},
              {"status", c.status}};
    if (!c.message.empty()) j["message"] = c.message;
    cells.push_back(std::move(j));
  }
  json out;
  out["problem"] = result.cloud.problem_name;
  out["config_digest"] = result.cloud.config_digest;
  out["config"] = cfg.canonical();
  out["points"] = std::move(points);
  out["cells"] = std::move(cells);
  out["solver_statistics"] = {{"cells", result.cells.size()},
                              {"failed_cells", result.failed_cells},
                              {"witness_evaluations", result.total_evaluations},
                              {"raw_points", result.raw_points},
                              {"deduplicated_points", result.cloud.points.size()}};
  if (!result.bounds.lower.empty())
    out["bounds"] = {{"lower", result.bounds.lower}, {"upper", result.bounds.upper}};
  out["pivot"] = result.pivot + 1;
  out["warnings"] = result.warnings;
  return out;
}

nlohmann::json VerifyReport::to_json() const {
  using nlohmann::json;
  auto dist = [](double v) { return std::isfinite(v) ? json(v) : json("inf"); };
  json off = json::array();
  for (const auto& [p, d] : offending) off.push_back({{"f", p}, {"distance", dist(d)}});
  json unc = json::array();
  for (const auto& [p, d] : uncovered) unc.push_back({{"f", p}, {"distance", dist(d)}});
  return {{"cloud_points", cloud_points}, {"oracle_points", oracle_points},
          {"soundness", dist(soundness)}, {"coverage", dist(coverage)},
          {"sound", sound},   {"covered", covered},   {"passed", passed},
          {"offending_points", off}, {"uncovered_oracle_points", unc}};
}

VerifyReport verify_cloud(const Problem& problem, const std::vector<Vec>& cloud,
                          const VerifyOptions& options) {
  VerifyReport rep;
  const std::vector<Vec> oracle = occupancy_boundary(image_cloud(problem, options.n, options.seed), options.h);
  rep.cloud_points = cloud.size();
  rep.oracle_points = oracle.size();
  const Vec to_oracle = nearest_distances(cloud, oracle);
  const Vec to_cloud = nearest_distances(oracle, cloud);
  rep.soundness = 0.0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    rep.soundness = std::max(rep.soundness, to_oracle[i]);
    if (to_oracle[i] > options.delta_sound) rep.offending.emplace_back(cloud[i], to_oracle[i]);
  }
  rep.coverage = 0.0;
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    rep.coverage = std::max(rep.coverage, to_cloud[i]);
    if (to_cloud[i] > options.delta_cover && rep.uncovered.size() < 100)
      rep.uncovered.emplace_back(oracle[i], to_cloud[i]);
  }
  rep.sound = rep.soundness <= options.delta_sound;
  rep.covered = rep.coverage <= options.delta_cover;
  rep.passed = rep.sound && rep.covered;
  return rep;
}

}  // namespace boundscan
