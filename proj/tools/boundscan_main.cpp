// boundscan: sweep scalarization parameters over a problem, emit the implied
// boundary cloud, and check it against a sampling oracle.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "boundscan/geometry.hpp"
#include "boundscan/problems.hpp"
#include "boundscan/scan.hpp"

namespace {

using boundscan::ScanConfig;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct GlobalFlags {
  std::optional<std::uint64_t> seed;
  std::size_t threads = 1;
  bool strict = false;
  std::optional<std::string> output_dir;
};

ScanConfig load(const std::string& path, const GlobalFlags& g) {
  ScanConfig cfg = boundscan::load_scan_config(path);
  if (g.seed) {
    cfg.solver.seed = *g.seed;
    cfg.orient_seed = *g.seed;
    cfg.verify_seed = *g.seed;
  }
  if (g.output_dir) cfg.output_dir = *g.output_dir;
  return cfg;
}

int run_scan(const ScanConfig& cfg, const GlobalFlags& g) {
  boundscan::ScanOptions options;
  options.threads = g.threads;
  const boundscan::ScanResult result = boundscan::scan(cfg, options);
  const boundscan::Problem problem = boundscan::load_problem(cfg.problem);
  boundscan::write_csv(result.cloud, problem.dim_control(), cfg.csv_path());
  {
    std::ofstream out(cfg.json_path(), std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + cfg.json_path().string() + "'");
    out << boundscan::result_to_json(cfg, result).dump(2) << '\n';
  }
  for (const std::string& w : result.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << "problem " << result.cloud.problem_name << ", digest " << result.cloud.config_digest
            << ": " << result.cells.size() << " cells, " << result.raw_points << " witnesses, "
            << result.cloud.points.size() << " points after dedup\n"
            << "wrote " << cfg.csv_path().string() << " and " << cfg.json_path().string() << '\n';
  if (g.strict && result.failed_cells > 0) {
    std::cerr << "error: " << result.failed_cells << " cells failed (--strict)\n";
    return kExitFailed;
  }
  return kExitOk;
}

std::string distance(double d) {
  if (!std::isfinite(d)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", d);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boundary characterization of image sets by spherical-cone scalarization"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_option("--seed", g.seed, "Override solver, orient and oracle seeds");
  app.add_option("--threads", g.threads, "Worker threads for the cell sweep")->check(CLI::PositiveNumber);
  app.add_flag("--strict", g.strict, "Exit nonzero if any cell fails");
  app.add_option("--output-dir", g.output_dir, "Override output.dir");

  std::string config_path;

  auto* scan_cmd = app.add_subcommand("scan", "Run the (a, b, k) sweep and write the boundary cloud");
  scan_cmd->add_option("config", config_path, "Scan config (JSON)")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Compare the scan output with the occupancy oracle");
  verify_cmd->set_help_flag("--help", "Print this help message and exit");
  verify_cmd->add_option("config", config_path, "Scan config (JSON)")->required();
  std::optional<std::size_t> v_n;
  std::optional<double> v_h, v_sound, v_cover;
  bool run_scan_first = false;
  verify_cmd->add_option("--n", v_n, "Oracle sample count");
  verify_cmd->add_option("--h", v_h, "Oracle cell size");
  verify_cmd->add_option("--delta-sound", v_sound, "Soundness tolerance (cloud to oracle)");
  verify_cmd->add_option("--delta-cover", v_cover, "Coverage tolerance (oracle to cloud)");
  verify_cmd->add_flag("--run-scan", run_scan_first, "Run the scan first if its CSV is missing");

  auto* problems_cmd = app.add_subcommand("problems", "Built-in problems");
  problems_cmd->add_subcommand("list", "List built-in problems");
  problems_cmd->require_subcommand(1);

  auto* cone_cmd = app.add_subcommand("check-cone", "Sample-based exterior cone check at a point");
  cone_cmd->add_option("config", config_path, "Scan config (JSON)")->required();
  std::vector<double> at, nu;
  std::size_t cone_n = 100000;
  cone_cmd->add_option("--at", at, "Point f, comma separated")->required()->delimiter(',');
  cone_cmd->add_option("--nu", nu, "Unit orient, comma separated")->required()->delimiter(',');
  cone_cmd->add_option("--n", cone_n, "Image samples")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (problems_cmd->parsed()) {
      for (const auto& p : boundscan::builtin_problems()) {
        std::cout << p.name;
        if (!p.parameters.empty()) std::cout << " (" << p.parameters << ")";
        std::cout << ": " << p.description << '\n';
      }
      return kExitOk;
    }

    const ScanConfig cfg = load(config_path, g);

    if (scan_cmd->parsed()) return run_scan(cfg, g);

    if (verify_cmd->parsed()) {
      if (!std::filesystem::exists(cfg.csv_path())) {
        if (!run_scan_first) {
          std::cerr << "error: missing scan output '" << cfg.csv_path().string()
                    << "' (run `scan` first or pass --run-scan)\n";
          return kExitConfig;
        }
        const int rc = run_scan(cfg, g);
        if (rc != kExitOk) return rc;
      }
      boundscan::VerifyOptions vo;
      vo.n = v_n.value_or(cfg.verify_n);
      vo.h = v_h.value_or(cfg.verify_h);
      vo.delta_sound = v_sound.value_or(cfg.delta_sound);
      vo.delta_cover = v_cover.value_or(cfg.delta_cover);
      vo.seed = cfg.verify_seed;
      const boundscan::Problem problem = boundscan::load_problem(cfg.problem);
      std::vector<boundscan::Vec> cloud;
      for (auto& p : boundscan::read_csv(cfg.csv_path()).points) cloud.push_back(std::move(p.f));
      const boundscan::VerifyReport rep = boundscan::verify_cloud(problem, cloud, vo);
      std::filesystem::create_directories(cfg.output_dir);
      std::ofstream(cfg.verify_path(), std::ios::binary) << rep.to_json().dump(2) << '\n';
      std::cout << "soundness " << distance(rep.soundness) << " (<= " << vo.delta_sound << "): "
                << (rep.sound ? "pass" : "FAIL") << '\n'
                << "coverage  " << distance(rep.coverage) << " (<= " << vo.delta_cover << "): "
                << (rep.covered ? "pass" : "FAIL") << '\n';
      for (const auto& [p, d] : rep.offending)
        std::cout << "  offending point " << boundscan::to_string(p) << " at " << distance(d) << '\n';
      std::cout << "report " << cfg.verify_path().string() << '\n';
      return rep.passed ? kExitOk : kExitFailed;
    }

    if (cone_cmd->parsed()) {
      const boundscan::Problem problem = boundscan::load_problem(cfg.problem);
      if (at.size() != problem.dim_image() || nu.size() != problem.dim_image()) {
        std::cerr << "error: --at and --nu need " << problem.dim_image() << " coordinates\n";
        return kExitConfig;
      }
      const boundscan::ConeSpec cone(nu, cfg.eta, cfg.r, boundscan::InteriorMode::kPartiallyOpen);
      const auto sample = boundscan::image_cloud(problem, cone_n, cfg.solver.seed);
      const auto hit = boundscan::find_cone_violation(sample, at, cone);
      if (hit) {
        std::cout << "false: sampled image point " << boundscan::to_string(sample[*hit])
                  << " lies in the shifted cone\n";
      } else {
        std::cout << "true: none of " << cone_n << " sampled image points lies in the shifted cone\n";
      }
      return kExitOk;
    }
  } catch (const boundscan::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}
