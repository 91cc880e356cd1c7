#ifndef BOUNDSCAN_SCAN_HPP_
#define BOUNDSCAN_SCAN_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "boundscan/bounds.hpp"
#include "boundscan/oracle.hpp"
#include "boundscan/scalarization.hpp"
#include "boundscan/solver.hpp"
#include "json.hpp"

namespace boundscan {

enum class BaseStrategy { kReduced, kReducedMulti, kExplicit, kBox };

struct ScanConfig {
  nlohmann::json problem;

  double eta = 1.0;
  double r = kInf;
  Truncation truncation = Truncation::kExact;

  std::size_t orient_count = 0;
  std::uint64_t orient_seed = 0;

  BaseStrategy strategy = BaseStrategy::kReduced;
  // 0-based; empty with auto_pivot set means "smallest sampled range".
  std::vector<std::size_t> pivots;
  bool auto_pivot = true;
  // Per free coordinate; a single entry is broadcast.
  std::vector<std::size_t> counts{9};
  bool envelope = false;
  std::optional<ComponentBounds> bounds;  // explicit override
  std::size_t bounds_samples = 100000;
  std::vector<Vec> explicit_bases;
  Vec box_lower;
  Vec box_upper;

  std::optional<std::size_t> k_max;  // nullopt = auto

  SolverConfig solver;
  double tol_level = 1e-7;
  double tol_value = 1e-6;
  std::optional<double> dedup_eps;  // defaults to verify_h

  std::filesystem::path output_dir = "out";
  std::string csv_name = "boundary.csv";
  std::string json_name = "boundary.json";

  std::size_t verify_n = 1000000;
  double verify_h = 0.01;
  double delta_sound = 0.05;
  double delta_cover = 0.15;
  std::uint64_t verify_seed = 1;

  std::filesystem::path csv_path() const;
  std::filesystem::path json_path() const;
  std::filesystem::path verify_path() const;

  // Canonical JSON of every resolved setting; feeds the digest.
  nlohmann::json canonical() const;
  std::string digest() const;
};

// Unknown keys and out-of-range values raise ConfigError. Missing cone
// settings fall back to the problem's recommendation.
ScanConfig parse_scan_config(const nlohmann::json& doc);
ScanConfig load_scan_config(const std::filesystem::path& path);

struct CellDiagnostic {
  std::size_t orient_index = 0;
  std::size_t base_index = 0;
  Vec a;
  Vec b;
  std::size_t k_max = 1;
  std::size_t witnesses = 0;
  std::size_t evaluations = 0;
  std::string status;  // ok | failed | infeasible_box
  std::string message;
};

struct ScanResult {
  BoundaryCloud cloud;
  std::vector<CellDiagnostic> cells;
  std::size_t failed_cells = 0;
  std::size_t total_evaluations = 0;
  std::size_t raw_points = 0;
  std::vector<std::string> warnings;
  ComponentBounds bounds;
  std::size_t pivot = 0;  // 0-based pivot actually used by `reduced`
};

struct ScanOptions {
  std::size_t threads = 1;
};

ScanResult scan(const ScanConfig& cfg, const ScanOptions& options = {});

// k_max auto rule: ceil((diam + |a - centroid|) / eps) over the image pool.
std::size_t auto_k_max(const std::vector<Vec>& images, std::span<const double> a, double eps);

void write_csv(const BoundaryCloud& cloud, std::size_t dim_control, std::ostream& out);
void write_csv(const BoundaryCloud& cloud, std::size_t dim_control, const std::filesystem::path& path);
nlohmann::json result_to_json(const ScanConfig& cfg, const ScanResult& result);

// Reads a cloud written by write_csv; dim_image taken from the header.
BoundaryCloud read_csv(const std::filesystem::path& path);

struct VerifyOptions {
  std::size_t n = 1000000;
  double h = 0.01;
  double delta_sound = 0.05;
  double delta_cover = 0.15;
  std::uint64_t seed = 1;
};

struct VerifyReport {
  std::size_t cloud_points = 0;
  std::size_t oracle_points = 0;
  double soundness = 0.0;  // cloud -> oracle
  double coverage = 0.0;   // oracle -> cloud
  bool sound = false;
  bool covered = false;
  bool passed = false;
  // Cloud points farther than delta_sound from the oracle boundary.
  std::vector<std::pair<Vec, double>> offending;
  // Oracle cells farther than delta_cover from the cloud (capped list).
  std::vector<std::pair<Vec, double>> uncovered;
  nlohmann::json to_json() const;
};

VerifyReport verify_cloud(const Problem& problem, const std::vector<Vec>& cloud,
                          const VerifyOptions& options);

}  // namespace boundscan

#endif  // BOUNDSCAN_SCAN_HPP_
