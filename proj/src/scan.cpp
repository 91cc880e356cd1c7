#include "boundscan/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>

#include "boundscan/expression.hpp"
#include "boundscan/geometry.hpp"
#include "boundscan/reduction.hpp"

namespace boundscan {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where,
                    std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, _] : obj.items())
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      throw ConfigError(where + ": unknown key '" + key + "'");
}

double number(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "infinity") return kInf;
    try {
      return evaluate_constant(s);
    } catch (const ExpressionError& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  throw ConfigError(where + ": expected a number");
}

std::size_t count(const json& v, const std::string& where, std::size_t min_value) {
  if (!v.is_number_integer() && !(v.is_number() && std::floor(v.get<double>()) == v.get<double>()))
    throw ConfigError(where + ": expected an integer");
  const double d = v.get<double>();
  if (d < static_cast<double>(min_value))
    throw ConfigError(where + ": must be >= " + std::to_string(min_value));
  return static_cast<std::size_t>(d);
}

std::uint64_t seed_of(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ConfigError(where + ": expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

Vec vector_of(const json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(where + ": expected an array");
  Vec out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(number(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

double positive(const json& v, const std::string& where) {
  const double d = number(v, where);
  if (!(d > 0.0) || !std::isfinite(d)) throw ConfigError(where + ": must be positive and finite");
  return d;
}

std::size_t pivot_of(const json& v, const std::string& where) {
  const std::size_t p = count(v, where, 1);
  return p - 1;
}

void parse_bases(const json& b, ScanConfig& cfg) {
  reject_unknown(b, "sweep.bases",
                 {"strategy", "pivot", "pivots", "counts", "envelope", "bounds", "bounds_samples",
                  "points", "lower", "upper"});
  const std::string strategy = b.value("strategy", std::string("reduced"));
  if (strategy == "reduced") {
    cfg.strategy = BaseStrategy::kReduced;
  } else if (strategy == "reduced_multi") {
    cfg.strategy = BaseStrategy::kReducedMulti;
  } else if (strategy == "explicit") {
    cfg.strategy = BaseStrategy::kExplicit;
  } else if (strategy == "box") {
    cfg.strategy = BaseStrategy::kBox;
  } else {
    throw ConfigError("sweep.bases.strategy: unknown strategy '" + strategy + "'");
  }

  if (b.contains("pivot")) {
    const json& p = b.at("pivot");
    if (p.is_string() && p.get<std::string>() == "auto") {
      cfg.auto_pivot = true;
    } else {
      cfg.auto_pivot = false;
      cfg.pivots = {pivot_of(p, "sweep.bases.pivot")};
    }
  }
  if (b.contains("pivots")) {
    const json& p = b.at("pivots");
    if (!p.is_array()) throw ConfigError("sweep.bases.pivots: expected an array");
    cfg.auto_pivot = false;
    cfg.pivots.clear();
    for (const auto& e : p) cfg.pivots.push_back(pivot_of(e, "sweep.bases.pivots"));
  }
  if (cfg.strategy == BaseStrategy::kReducedMulti && cfg.pivots.size() < 2)
    throw ConfigError("sweep.bases.pivots: reduced_multi needs at least two pivots");

  if (b.contains("counts")) {
    const json& c = b.at("counts");
    cfg.counts.clear();
    if (c.is_array()) {
      for (const auto& e : c) cfg.counts.push_back(count(e, "sweep.bases.counts", 1));
    } else {
      cfg.counts.push_back(count(c, "sweep.bases.counts", 1));
    }
    if (cfg.counts.empty()) throw ConfigError("sweep.bases.counts: empty");
  }
  if (b.contains("envelope")) {
    if (!b.at("envelope").is_boolean()) throw ConfigError("sweep.bases.envelope: expected a boolean");
    cfg.envelope = b.at("envelope").get<bool>();
  }
  if (b.contains("bounds")) {
    const json& bd = b.at("bounds");
    if (bd.is_string()) {
      const std::string s = bd.get<std::string>();
      if (s != "analytic" && s != "sampled")
        throw ConfigError("sweep.bases.bounds: expected 'analytic', 'sampled' or an object");
      if (s == "sampled") cfg.bounds = ComponentBounds{};  // marker, resolved in scan
    } else {
      reject_unknown(bd, "sweep.bases.bounds", {"lower", "upper"});
      ComponentBounds cb;
      cb.lower = vector_of(bd.at("lower"), "sweep.bases.bounds.lower");
      cb.upper = vector_of(bd.at("upper"), "sweep.bases.bounds.upper");
      try {
        cb.validate();
      } catch (const std::exception& e) {
        throw ConfigError(std::string("sweep.bases.bounds: ") + e.what());
      }
      cfg.bounds = cb;
    }
  }
  if (b.contains("bounds_samples"))
    cfg.bounds_samples = count(b.at("bounds_samples"), "sweep.bases.bounds_samples", 1);
  if (b.contains("points")) {
    const json& pts = b.at("points");
    if (!pts.is_array()) throw ConfigError("sweep.bases.points: expected an array of points");
    for (std::size_t i = 0; i < pts.size(); ++i)
      cfg.explicit_bases.push_back(vector_of(pts[i], "sweep.bases.points[" + std::to_string(i) + "]"));
  }
  if (b.contains("lower")) cfg.box_lower = vector_of(b.at("lower"), "sweep.bases.lower");
  if (b.contains("upper")) cfg.box_upper = vector_of(b.at("upper"), "sweep.bases.upper");

  if (cfg.strategy == BaseStrategy::kExplicit && cfg.explicit_bases.empty())
    throw ConfigError("sweep.bases.points: explicit strategy needs at least one point");
  if (cfg.box_lower.size() != cfg.box_upper.size())
    throw ConfigError("sweep.bases.lower/upper: lengths differ");
  for (std::size_t i = 0; i < cfg.box_lower.size(); ++i)
    if (cfg.box_lower[i] > cfg.box_upper[i])
      throw ConfigError("sweep.bases.lower/upper: lower > upper");
}

void parse_solver(const json& s, SolverConfig& solver) {
  reject_unknown(s, "solver",
                 {"n_starts", "budget", "local_budget", "local_tol", "pool_size", "seed", "method",
                  "tol_constraint"});
  if (s.contains("n_starts")) solver.n_starts = count(s.at("n_starts"), "solver.n_starts", 1);
  if (s.contains("budget")) solver.budget = count(s.at("budget"), "solver.budget", 1);
  if (s.contains("local_budget"))
    solver.local_budget = count(s.at("local_budget"), "solver.local_budget", 1);
  if (s.contains("local_tol")) solver.local_tol = positive(s.at("local_tol"), "solver.local_tol");
  if (s.contains("pool_size")) solver.pool_size = count(s.at("pool_size"), "solver.pool_size", 1);
  if (s.contains("seed")) solver.seed = seed_of(s.at("seed"), "solver.seed");
  if (s.contains("tol_constraint"))
    solver.tol_constraint = positive(s.at("tol_constraint"), "solver.tol_constraint");
  if (s.contains("method")) {
    const std::string m = s.at("method").get<std::string>();
    if (m == "direct_multistart") {
      solver.method = SolverMethod::kDirectMultistart;
    } else if (m == "two_stage") {
      solver.method = SolverMethod::kTwoStage;
    } else {
      throw ConfigError("solver.method: unknown method '" + m + "'");
    }
  }
  solver.validate();
}

std::string truncation_name(Truncation t) {
  return t == Truncation::kExact ? "exact" : "closed_form";
}

std::string strategy_name(BaseStrategy s) {
  switch (s) {
    case BaseStrategy::kReduced: return "reduced";
    case BaseStrategy::kReducedMulti: return "reduced_multi";
    case BaseStrategy::kExplicit: return "explicit";
    case BaseStrategy::kBox: return "box";
  }
  return "";
}

json number_json(double v) { return std::isinf(v) ? json("inf") : json(v); }

}  // namespace

std::filesystem::path ScanConfig::csv_path() const { return output_dir / csv_name; }
std::filesystem::path ScanConfig::json_path() const { return output_dir / json_name; }
std::filesystem::path ScanConfig::verify_path() const { return output_dir / "verify.json"; }

ScanConfig parse_scan_config(const json& doc) {
  reject_unknown(doc, "config", {"problem", "cone", "sweep", "solver", "tolerances", "output", "verify"});
  if (!doc.contains("problem")) throw ConfigError("config: missing 'problem' section");
  if (!doc.contains("sweep")) throw ConfigError("config: missing 'sweep' section");

  ScanConfig cfg;
  cfg.problem = doc.at("problem");
  const Problem problem = load_problem(cfg.problem);
  cfg.eta = problem.recommended_eta();
  cfg.r = problem.recommended_r();

  if (doc.contains("cone")) {
    const json& c = doc.at("cone");
    reject_unknown(c, "cone", {"eta", "r", "truncation"});
    if (c.contains("eta")) cfg.eta = number(c.at("eta"), "cone.eta");
    if (c.contains("r")) cfg.r = number(c.at("r"), "cone.r");
    if (c.contains("truncation")) {
      const std::string t = c.at("truncation").get<std::string>();
      if (t == "exact") {
        cfg.truncation = Truncation::kExact;
      } else if (t == "closed_form") {
        cfg.truncation = Truncation::kClosedForm;
      } else {
        throw ConfigError("cone.truncation: expected 'exact' or 'closed_form'");
      }
    }
  }
  if (!(cfg.eta > 0.0 && cfg.eta <= 1.0)) throw ConfigError("cone.eta: must lie in (0, 1]");
  if (!(cfg.r > 0.0)) throw ConfigError("cone.r: must be positive or \"inf\"");

  const json& sweep = doc.at("sweep");
  reject_unknown(sweep, "sweep", {"orients", "bases", "k_max"});
  if (!sweep.contains("orients")) throw ConfigError("sweep: missing 'orients'");
  const json& o = sweep.at("orients");
  if (o.is_object()) {
    reject_unknown(o, "sweep.orients", {"count", "seed"});
    if (!o.contains("count")) throw ConfigError("sweep.orients: missing 'count'");
    cfg.orient_count = count(o.at("count"), "sweep.orients.count", 1);
    if (o.contains("seed")) cfg.orient_seed = seed_of(o.at("seed"), "sweep.orients.seed");
  } else {
    cfg.orient_count = count(o, "sweep.orients", 1);
  }
  if (sweep.contains("bases")) parse_bases(sweep.at("bases"), cfg);
  if (sweep.contains("k_max")) {
    const json& k = sweep.at("k_max");
    if (k.is_string() && k.get<std::string>() == "auto") {
      cfg.k_max.reset();
    } else {
      cfg.k_max = count(k, "sweep.k_max", 1);
    }
  }

  if (doc.contains("solver")) parse_solver(doc.at("solver"), cfg.solver);
  if (cfg.solver.method == SolverMethod::kTwoStage && cfg.truncation == Truncation::kExact &&
      std::isfinite(cfg.r))
    throw ConfigError("solver.method: two_stage supports only closed_form truncation or r = inf");

  if (doc.contains("tolerances")) {
    const json& t = doc.at("tolerances");
    reject_unknown(t, "tolerances", {"tol_level", "tol_value", "dedup_eps"});
    if (t.contains("tol_level")) cfg.tol_level = positive(t.at("tol_level"), "tolerances.tol_level");
    if (t.contains("tol_value")) cfg.tol_value = positive(t.at("tol_value"), "tolerances.tol_value");
    if (t.contains("dedup_eps")) cfg.dedup_eps = positive(t.at("dedup_eps"), "tolerances.dedup_eps");
  }
  if (doc.contains("output")) {
    const json& out = doc.at("output");
    reject_unknown(out, "output", {"dir", "csv", "json"});
    if (out.contains("dir")) cfg.output_dir = out.at("dir").get<std::string>();
    if (out.contains("csv")) cfg.csv_name = out.at("csv").get<std::string>();
    if (out.contains("json")) cfg.json_name = out.at("json").get<std::string>();
  }
  if (doc.contains("verify")) {
    const json& v = doc.at("verify");
    reject_unknown(v, "verify", {"n", "h", "delta_sound", "delta_cover", "seed"});
    if (v.contains("n")) cfg.verify_n = count(v.at("n"), "verify.n", 1);
    if (v.contains("h")) cfg.verify_h = positive(v.at("h"), "verify.h");
    if (v.contains("delta_sound")) cfg.delta_sound = positive(v.at("delta_sound"), "verify.delta_sound");
    if (v.contains("delta_cover")) cfg.delta_cover = positive(v.at("delta_cover"), "verify.delta_cover");
    if (v.contains("seed")) cfg.verify_seed = seed_of(v.at("seed"), "verify.seed");
  }

  const std::size_t m = problem.dim_image();
  if (m < 2 && (cfg.strategy == BaseStrategy::kReduced || cfg.strategy == BaseStrategy::kReducedMulti))
    throw ConfigError("sweep.bases.strategy: reduction needs an image of dimension >= 2");
  for (std::size_t p : cfg.pivots)
    if (p >= m) throw ConfigError("sweep.bases.pivot: index " + std::to_string(p + 1) + " exceeds m");
  for (const Vec& a : cfg.explicit_bases)
    if (a.size() != m) throw ConfigError("sweep.bases.points: each point needs dimension " + std::to_string(m));
  if (!cfg.box_lower.empty() && cfg.box_lower.size() != m)
    throw ConfigError("sweep.bases.lower/upper: dimension must be " + std::to_string(m));
  if (cfg.bounds && !cfg.bounds->lower.empty() && cfg.bounds->dim() != m)
    throw ConfigError("sweep.bases.bounds: dimension must be " + std::to_string(m));
  return cfg;
}

ScanConfig load_scan_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path.string() + "': " + e.what());
  }
  return parse_scan_config(doc);
}

json ScanConfig::canonical() const {
  json j;
  j["problem"] = problem;
  j["cone"] = {{"eta", eta}, {"r", number_json(r)}, {"truncation", truncation_name(truncation)}};
  json bases = {{"strategy", strategy_name(strategy)}, {"counts", counts}, {"envelope", envelope},
                {"bounds_samples", bounds_samples}};
  if (auto_pivot) {
    bases["pivot"] = "auto";
  } else {
    json p = json::array();
    for (std::size_t i : pivots) p.push_back(i + 1);
    bases["pivots"] = p;
  }
  if (bounds && !bounds->lower.empty()) bases["bounds"] = {{"lower", bounds->lower}, {"upper", bounds->upper}};
  if (bounds && bounds->lower.empty()) bases["bounds"] = "sampled";
  if (!explicit_bases.empty()) bases["points"] = explicit_bases;
  if (!box_lower.empty()) {
    bases["lower"] = box_lower;
    bases["upper"] = box_upper;
  }
  j["sweep"] = {{"orients", {{"count", orient_count}, {"seed", orient_seed}}},
                {"bases", bases},
                {"k_max", k_max ? json(*k_max) : json("auto")}};
  j["solver"] = {{"n_starts", solver.n_starts},
                 {"budget", solver.budget},
                 {"local_budget", solver.local_budget},
                 {"local_tol", solver.local_tol},
                 {"pool_size", solver.pool_size},
                 {"seed", solver.seed},
                 {"tol_constraint", solver.tol_constraint},
                 {"method", solver.method == SolverMethod::kTwoStage ? "two_stage" : "direct_multistart"}};
  j["tolerances"] = {{"tol_level", tol_level}, {"tol_value", tol_value},
                     {"dedup_eps", dedup_eps ? *dedup_eps : verify_h}};
  return j;
}

std::string ScanConfig::digest() const {
  // FNV-1a 64 over the canonical dump.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical().dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::size_t auto_k_max(const std::vector<Vec>& images, std::span<const double> a, double eps) {
  if (images.empty()) throw std::invalid_argument("auto_k_max: empty image sample");
  const std::size_t m = images[0].size();
  Vec lo(m, kInf), hi(m, -kInf), centroid(m, 0.0);
  for (const Vec& f : images)
    for (std::size_t i = 0; i < m; ++i) {
      lo[i] = std::min(lo[i], f[i]);
      hi[i] = std::max(hi[i], f[i]);
      centroid[i] += f[i] / static_cast<double>(images.size());
    }
  const double diam = norm(subtract(hi, lo));
  const double offset = norm(subtract(a, centroid));
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((diam + offset) / eps)));
}

namespace {

struct Cell {
  std::size_t orient_index;
  std::size_t base_index;
  Vec a;
  Vec b;
};

std::vector<std::size_t> expand_counts(const std::vector<std::size_t>& counts, std::size_t n_free) {
  if (counts.size() == n_free) return counts;
  if (counts.size() == 1) return std::vector<std::size_t>(n_free, counts[0]);
  throw ConfigError("sweep.bases.counts: need 1 or " + std::to_string(n_free) + " entries");
}

}  // namespace

ScanResult scan(const ScanConfig& cfg, const ScanOptions& options) {
  const Problem problem = load_problem(cfg.problem);
  const std::size_t m = problem.dim_image();
  ScanResult result;
  result.cloud.problem_name = problem.name();
  result.cloud.config_digest = cfg.digest();

  ScalarizationOptions sopt;
  sopt.truncation = cfg.truncation;
  sopt.tol_level = cfg.tol_level;
  sopt.tol_value = cfg.tol_value;
  auto pool = std::make_shared<const ImagePool>(problem, cfg.solver.pool_size, cfg.solver.seed);
  const ScalarizationEngine engine(problem, cfg.solver, sopt, pool);

  const std::vector<Vec> orients = unit_sphere_grid(m, cfg.orient_count, cfg.orient_seed);

  const bool needs_bounds = cfg.strategy == BaseStrategy::kReduced ||
                            cfg.strategy == BaseStrategy::kReducedMulti ||
                            (cfg.strategy == BaseStrategy::kBox && cfg.box_lower.empty());
  if (needs_bounds) {
    if (cfg.bounds && !cfg.bounds->lower.empty()) {
      result.bounds = *cfg.bounds;
    } else if (!cfg.bounds && problem.analytic_bounds()) {
      result.bounds = *problem.analytic_bounds();
    } else {
      result.bounds = component_bounds(problem, cfg.bounds_samples, cfg.solver.seed);
    }
  }
  result.pivot = cfg.auto_pivot && needs_bounds ? smallest_range_coordinate(result.bounds)
                                                : (cfg.pivots.empty() ? 0 : cfg.pivots[0]);

  std::vector<Cell> cells;
  for (std::size_t bi = 0; bi < orients.size(); ++bi) {
    const Vec& b = orients[bi];
    std::vector<Vec> bases;
    switch (cfg.strategy) {
      case BaseStrategy::kReduced: {
        const ParamBox box = cfg.envelope ? parameter_range_envelope(result.bounds, b, result.pivot)
                                          : parameter_range(result.bounds, b, result.pivot);
        bases = sample_param_grid(box, expand_counts(cfg.counts, m - 1));
        break;
      }
      case BaseStrategy::kReducedMulti: {
        const IntersectionResult r = parameter_range_intersection(result.bounds, b, cfg.pivots);
        if (const auto* bad = std::get_if<Infeasible>(&r)) {
          CellDiagnostic d;
          d.orient_index = bi;
          d.b = b;
          d.status = "infeasible_box";
          d.message = bad->condition + ": " + bad->detail;
          result.warnings.push_back("orient " + std::to_string(bi) + ": " + d.message);
          result.cells.push_back(std::move(d));
          continue;
        }
        const ParamBox& box = std::get<ParamBox>(r);
        bases = sample_param_grid(box, expand_counts(cfg.counts, box.free_coordinates().size()));
        break;
      }
      case BaseStrategy::kExplicit:
        bases = cfg.explicit_bases;
        break;
      case BaseStrategy::kBox: {
        ParamBox box{Vec(m), Vec(m), std::vector<bool>(m, false)};
        for (std::size_t i = 0; i < m; ++i) {
          if (!cfg.box_lower.empty()) {
            box.lo[i] = cfg.box_lower[i];
            box.hi[i] = cfg.box_upper[i];
          } else {
            const double half = 0.5 * (result.bounds.upper[i] - result.bounds.lower[i]);
            box.lo[i] = result.bounds.lower[i] - half;
            box.hi[i] = result.bounds.upper[i] + half;
          }
        }
        bases = sample_param_grid(box, expand_counts(cfg.counts, m));
        break;
      }
    }
    for (std::size_t ai = 0; ai < bases.size(); ++ai) cells.push_back({bi, ai, bases[ai], b});
  }

  struct CellOutput {
    CellDiagnostic diag;
    std::vector<BoundaryPoint> points;
  };
  std::vector<CellOutput> outputs(cells.size());
  const bool finite_r = std::isfinite(cfg.r);

  auto run_cell = [&](std::size_t i) {
    const Cell& c = cells[i];
    CellOutput& out = outputs[i];
    out.diag.orient_index = c.orient_index;
    out.diag.base_index = c.base_index;
    out.diag.a = c.a;
    out.diag.b = c.b;
    try {
      const std::size_t k_max =
          !finite_r ? 1 : (cfg.k_max ? *cfg.k_max : auto_k_max(pool->images(), c.a, cfg.r / 3.0));
      out.diag.k_max = k_max;
      for (LevelWitness& lw : engine.level_sweep(c.a, c.b, cfg.eta, cfg.r, k_max)) {
        out.diag.evaluations += lw.report.evaluations;
        for (Witness& w : lw.report.argmax_set)
          out.points.push_back({std::move(w.f), std::move(w.x), c.a, c.b, lw.k, lw.report.value});
      }
      out.diag.witnesses = out.points.size();
      out.diag.status = "ok";
    } catch (const SolverFailure& e) {
      out.diag.status = "failed";
      out.diag.message = e.what();
    }
  };

  const std::size_t threads = std::max<std::size_t>(1, std::min(options.threads, cells.size()));
  if (threads == 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run_cell(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (std::size_t t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) {
          try {
            run_cell(i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
    for (auto& w : workers) w.join();
    if (error) std::rethrow_exception(error);
  }

  std::vector<BoundaryPoint> points;
  for (CellOutput& out : outputs) {
    if (out.diag.status == "failed") {
      ++result.failed_cells;
      result.warnings.push_back("cell (orient " + std::to_string(out.diag.orient_index) + ", base " +
                                std::to_string(out.diag.base_index) + ") failed: " + out.diag.message);
    }
    result.total_evaluations += out.diag.evaluations;
    for (BoundaryPoint& p : out.points) points.push_back(std::move(p));
    result.cells.push_back(std::move(out.diag));
  }
  std::stable_sort(result.cells.begin(), result.cells.end(),
                   [](const CellDiagnostic& u, const CellDiagnostic& v) {
                     return std::tie(u.orient_index, u.base_index) < std::tie(v.orient_index, v.base_index);
                   });
  result.raw_points = points.size();
  result.cloud.points = dedup(std::move(points), cfg.dedup_eps ? *cfg.dedup_eps : cfg.verify_h);
  return result;
}

}  // namespace boundscan
