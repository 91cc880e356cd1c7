#include "boundscan/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "boundscan/scalarization.hpp"

namespace boundscan {

void SolverConfig::validate() const {
  if (n_starts < 1) throw ConfigError("solver.n_starts must be >= 1");
  if (budget < n_starts) throw ConfigError("solver.budget must be >= n_starts");
  if (local_budget < 1) throw ConfigError("solver.local_budget must be >= 1");
  if (!(local_tol > 0.0)) throw ConfigError("solver.local_tol must be positive");
  if (pool_size < n_starts) throw ConfigError("solver.pool_size must be >= n_starts");
  if (!(tol_constraint > 0.0)) throw ConfigError("solver.tol_constraint must be positive");
}

ImagePool::ImagePool(const Problem& problem, std::size_t size, std::uint64_t seed) {
  controls_ = problem.sample(size, seed);
  images_.reserve(size);
  for (const Vec& x : controls_) images_.push_back(problem.evaluate(x));
}

namespace {

struct Vertex {
  Vec x;
  double value;
};

class Evaluator {
 public:
  Evaluator(const ControlObjective& objective, const Problem& problem, std::size_t budget,
            std::size_t& evaluations)
      : objective_(objective), problem_(problem), budget_(budget), evaluations_(evaluations) {}

  double operator()(std::span<const double> x) {
    ++used_;
    ++evaluations_;
    if (!problem_.feasible(x)) return -kInf;
    const double v = objective_(x);
    return std::isnan(v) ? -kInf : v;
  }
  bool exhausted() const { return used_ >= budget_; }

 private:
  const ControlObjective& objective_;
  const Problem& problem_;
  std::size_t budget_;
  std::size_t used_ = 0;
  std::size_t& evaluations_;
};

// Simplex size in scaled coordinates: max over vertices of the sup-distance
// to the best vertex.
double simplex_size(const std::vector<Vertex>& s, const Vec& scale) {
  double size = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i)
    for (std::size_t j = 0; j < scale.size(); ++j)
      size = std::max(size, std::abs(s[i].x[j] - s[0].x[j]) / scale[j]);
  return size;
}

Vertex nelder_mead(Evaluator& eval, const Vec& scale, Vertex start, double step, double tol) {
  const std::size_t d = start.x.size();
  std::vector<Vertex> s;
  s.reserve(d + 1);
  s.push_back(start);
  for (std::size_t j = 0; j < d && !eval.exhausted(); ++j) {
    // Try +step, then -step, then shrink until the vertex is feasible.
    Vertex v{start.x, -kInf};
    double h = step * scale[j];
    for (int attempt = 0; attempt < 12 && !std::isfinite(v.value) && !eval.exhausted(); ++attempt) {
      v.x[j] = start.x[j] + ((attempt % 2 == 0) ? h : -h);
      v.value = eval(v.x);
      if (attempt % 2 == 1) h *= 0.25;
    }
    if (!std::isfinite(v.value)) v.x[j] = start.x[j] + h;
    s.push_back(std::move(v));
  }
  if (s.size() < d + 1) return start;

  auto order = [&] {
    std::stable_sort(s.begin(), s.end(),
                     [](const Vertex& u, const Vertex& v) { return u.value > v.value; });
  };
  Vec centroid(d), trial(d);
  auto point_along = [&](double t) {
    for (std::size_t j = 0; j < d; ++j) trial[j] = centroid[j] + t * (s[d].x[j] - centroid[j]);
    return Vertex{trial, eval(trial)};
  };

  order();
  while (!eval.exhausted() && simplex_size(s, scale) > tol) {
    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) centroid[j] += s[i].x[j] / static_cast<double>(d);

    Vertex reflected = point_along(-1.0);
    if (reflected.value > s[0].value) {
      Vertex expanded = eval.exhausted() ? reflected : point_along(-2.0);
      s[d] = expanded.value > reflected.value ? std::move(expanded) : std::move(reflected);
    } else if (reflected.value > s[d - 1].value) {
      s[d] = std::move(reflected);
    } else {
      const bool outside = reflected.value > s[d].value;
      Vertex contracted = point_along(outside ? -0.5 : 0.5);
      if (contracted.value > std::max(s[d].value, outside ? reflected.value : -kInf) ||
          (contracted.value == s[d].value && std::isfinite(contracted.value))) {
        s[d] = std::move(contracted);
      } else {
        for (std::size_t i = 1; i <= d && !eval.exhausted(); ++i) {
          for (std::size_t j = 0; j < d; ++j) s[i].x[j] = s[0].x[j] + 0.5 * (s[i].x[j] - s[0].x[j]);
          s[i].value = eval(s[i].x);
        }
      }
    }
    order();
  }
  return s[0];
}

// Pattern search along +-e_i and the diagonals (+-e_i +- e_j)/sqrt2.
Vertex compass(Evaluator& eval, const Vec& scale, Vertex best, double step, double tol) {
  const std::size_t d = best.x.size();
  std::vector<Vec> dirs;
  for (std::size_t i = 0; i < d; ++i) {
    for (double sgn : {1.0, -1.0}) {
      Vec e(d, 0.0);
      e[i] = sgn;
      dirs.push_back(e);
    }
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (double si : {1.0, -1.0})
        for (double sj : {1.0, -1.0}) {
          Vec e(d, 0.0);
          e[i] = si * M_SQRT1_2;
          e[j] = sj * M_SQRT1_2;
          dirs.push_back(e);
        }
  Vec trial(d);
  while (step > tol && !eval.exhausted()) {
    bool improved = false;
    for (const Vec& e : dirs) {
      if (eval.exhausted()) break;
      for (std::size_t j = 0; j < d; ++j) trial[j] = best.x[j] + step * scale[j] * e[j];
      const double v = eval(trial);
      if (v > best.value) {
        best = Vertex{trial, v};
        improved = true;
        break;
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

double initial_step_for(const SolverConfig& cfg, std::size_t dim) {
  const double spacing = std::pow(static_cast<double>(std::max<std::size_t>(cfg.pool_size, 1)),
                                  -1.0 / static_cast<double>(dim));
  return std::clamp(2.0 * spacing, 1e-3, 0.25);
}

// Indices of the best `n` finite screening values, ties to the lower index.
std::vector<std::size_t> top_indices(const std::vector<double>& values, std::size_t n) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (std::isfinite(values[i])) idx.push_back(i);
  n = std::min(n, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n), idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      return values[a] != values[b] ? values[a] > values[b] : a < b;
                    });
  idx.resize(n);
  return idx;
}

MaximizeResult run_starts(const ControlObjective& objective, const Problem& problem,
                          const SolverConfig& cfg, const std::vector<Vec>& starts,
                          const std::vector<double>& start_values, std::size_t screened) {
  if (starts.empty())
    throw SolverFailure("no feasible start with a finite objective for problem '" +
                        problem.name() + "'");
  MaximizeResult result;
  result.evaluations = screened;
  const double step = initial_step_for(cfg, problem.dim_control());
  std::size_t used = 0;
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const std::size_t remaining = cfg.budget > used ? cfg.budget - used : 0;
    const std::size_t allowance = std::min(cfg.local_budget, remaining);
    LocalOptimum opt;
    if (allowance == 0) {
      opt = LocalOptimum{starts[i], start_values[i], i};
    } else {
      std::size_t evals = 0;
      opt = local_search(objective, problem, starts[i], step, allowance, cfg.local_tol, evals);
      used += evals;
      result.evaluations += evals;
      if (!(opt.value >= start_values[i])) opt = LocalOptimum{starts[i], start_values[i], i};
    }
    opt.start_index = i;
    if (opt.value > result.best_value || result.best_x.empty()) {
      result.best_value = opt.value;
      result.best_x = opt.x;
    }
    result.all_local_optima.push_back(std::move(opt));
  }
  return result;
}

}  // namespace

LocalOptimum local_search(const ControlObjective& objective, const Problem& problem,
                          std::span<const double> x0, double initial_step, std::size_t budget,
                          double local_tol, std::size_t& evaluations) {
  Evaluator eval(objective, problem, budget, evaluations);
  Vertex best{Vec(x0.begin(), x0.end()), eval(x0)};
  if (!std::isfinite(best.value)) return LocalOptimum{best.x, best.value, 0};
  const Vec& scale = problem.control_scale();
  double step = initial_step;
  for (int cycle = 0; cycle < 3 && !eval.exhausted(); ++cycle) {
    const double before = best.value;
    best = nelder_mead(eval, scale, std::move(best), step, local_tol);
    best = compass(eval, scale, std::move(best), std::max(1e-4, 100 * local_tol), local_tol);
    if (cycle > 0 && !(best.value > before)) break;
    step *= 0.01;
  }
  return LocalOptimum{best.x, best.value, 0};
}

MaximizeResult maximize(const ControlObjective& objective, const Problem& problem,
                        const SolverConfig& cfg) {
  cfg.validate();
  std::vector<Vec> pool = problem.sample(cfg.pool_size, cfg.seed);
  std::vector<double> values(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const double v = problem.feasible(pool[i]) ? objective(pool[i]) : -kInf;
    values[i] = std::isnan(v) ? -kInf : v;
  }
  std::vector<Vec> starts;
  std::vector<double> start_values;
  for (std::size_t i : top_indices(values, cfg.n_starts)) {
    starts.push_back(pool[i]);
    start_values.push_back(values[i]);
  }
  return run_starts(objective, problem, cfg, starts, start_values, pool.size());
}

MaximizeResult maximize_image(const ImageObjective& objective, const Problem& problem,
                              const ImagePool& pool, const SolverConfig& cfg) {
  cfg.validate();
  std::vector<double> values(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const double v = objective(pool.image(i));
    values[i] = std::isnan(v) ? -kInf : v;
  }
  std::vector<Vec> starts;
  std::vector<double> start_values;
  for (std::size_t i : top_indices(values, cfg.n_starts)) {
    auto c = pool.control(i);
    starts.emplace_back(c.begin(), c.end());
    start_values.push_back(values[i]);
  }
  Vec f(problem.dim_image());
  ControlObjective on_controls = [&](std::span<const double> x) {
    problem.evaluate(x, f);
    return objective(f);
  };
  return run_starts(on_controls, problem, cfg, starts, start_values, 0);
}

std::vector<Vec> orthonormal_complement(std::span<const double> b) {
  require_unit(b, "orient");
  const std::size_t m = b.size();
  std::vector<Vec> basis{Vec(b.begin(), b.end())};
  for (std::size_t axis = 0; axis < m && basis.size() < m; ++axis) {
    Vec v(m, 0.0);
    v[axis] = 1.0;
    // Two passes of modified Gram-Schmidt for stability.
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& u : basis) {
        const double c = dot(v, u);
        for (std::size_t j = 0; j < m; ++j) v[j] -= c * u[j];
      }
    const double n = norm(v);
    if (n < 1e-8) continue;
    for (double& x : v) x /= n;
    basis.push_back(std::move(v));
  }
  basis.erase(basis.begin());
  return basis;
}

InnerResult two_stage_inner(const Problem& problem, std::span<const double> a,
                            std::span<const double> b, const std::vector<Vec>& basis,
                            std::span<const double> l, const SolverConfig& cfg,
                            const ImagePool& pool, std::span<const double> x_warm,
                            std::size_t& evaluations) {
  const std::size_t q = basis.size();
  Vec lambda(q, 0.0);
  double mu = 10.0;
  Vec f(problem.dim_image()), fa(problem.dim_image());

  auto residuals = [&](std::span<const double> image, Vec& c) {
    for (std::size_t i = 0; i < image.size(); ++i) fa[i] = image[i] - a[i];
    for (std::size_t j = 0; j < q; ++j) c[j] = dot(fa, basis[j]) - l[j];
  };
  Vec c(q);
  auto augmented = [&](std::span<const double> image) {
    residuals(image, c);
    double v = dot(image, b);
    for (std::size_t j = 0; j < q; ++j) v += lambda[j] * c[j] - 0.5 * mu * c[j] * c[j];
    return v;
  };
  ControlObjective on_controls = [&](std::span<const double> x) {
    problem.evaluate(x, f);
    return augmented(f);
  };

  // Starts: the warm point plus the best pool points under the first penalty.
  std::vector<double> screen(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) screen[i] = augmented(pool.image(i));
  std::vector<Vec> starts;
  if (!x_warm.empty() && problem.feasible(x_warm)) starts.emplace_back(x_warm.begin(), x_warm.end());
  const std::size_t n_inner = std::max<std::size_t>(2, std::min<std::size_t>(cfg.n_starts, 3));
  for (std::size_t i : top_indices(screen, n_inner)) {
    auto ctl = pool.control(i);
    starts.emplace_back(ctl.begin(), ctl.end());
  }
  if (starts.empty()) return {};

  const double step = initial_step_for(cfg, problem.dim_control());
  Vec x;
  double best = -kInf;
  for (const Vec& s : starts) {
    std::size_t evals = 0;
    LocalOptimum opt = local_search(on_controls, problem, s, step, cfg.local_budget, cfg.local_tol, evals);
    evaluations += evals;
    if (opt.value > best) {
      best = opt.value;
      x = opt.x;
    }
  }
  if (x.empty()) return {};

  InnerResult out;
  double previous = kInf;
  for (int round = 0; round < 25; ++round) {
    problem.evaluate(x, f);
    residuals(f, c);
    const double res = norm(c);
    out.x = x;
    out.residual = res;
    if (res <= cfg.tol_constraint) break;
    for (std::size_t j = 0; j < q; ++j) lambda[j] -= mu * c[j];
    if (res > 0.25 * previous) mu = std::min(mu * 10.0, 1e12);
    previous = res;
    std::size_t evals = 0;
    LocalOptimum opt = local_search(on_controls, problem, x, 1e-3, cfg.local_budget, cfg.local_tol, evals);
    evaluations += evals;
    x = opt.x;
  }
  problem.evaluate(out.x, f);
  out.value = out.residual <= cfg.tol_constraint ? dot(f, b) : -kInf;
  return out;
}

TwoStageResult two_stage_maximize(const Problem& problem, std::span<const double> a,
                                  std::span<const double> b, double eta,
                                  const std::vector<Vec>& basis, const SolverConfig& cfg,
                                  const ImagePool& pool) {
  cfg.validate();
  require_same_dim(a, b, "two_stage_maximize");
  require_unit(b, "orient");
  const std::size_t q = basis.size();
  const double th = theta(eta);
  const double ab = dot(a, b);
  TwoStageResult result;

  // l-range and outer starts from the pool.
  Vec lo(q, kInf), hi(q, -kInf);
  std::vector<double> h(pool.size());
  std::vector<Vec> pool_l(pool.size(), Vec(q));
  Vec fa(a.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    auto img = pool.image(i);
    for (std::size_t k = 0; k < a.size(); ++k) fa[k] = img[k] - a[k];
    for (std::size_t j = 0; j < q; ++j) {
      pool_l[i][j] = dot(fa, basis[j]);
      lo[j] = std::min(lo[j], pool_l[i][j]);
      hi[j] = std::max(hi[j], pool_l[i][j]);
    }
    h[i] = dot(fa, b) - th * norm(pool_l[i]);
  }
  Vec l_scale(q);
  bool degenerate = true;
  for (std::size_t j = 0; j < q; ++j) {
    l_scale[j] = hi[j] - lo[j];
    if (l_scale[j] > 1e-12) degenerate = false;
    if (!(l_scale[j] > 1e-12)) l_scale[j] = 1.0;
  }

  Vec x_warm;
  auto phi = [&](std::span<const double> l) {
    InnerResult inner = two_stage_inner(problem, a, b, basis, l, cfg, pool, x_warm, result.evaluations);
    if (!std::isfinite(inner.value)) return -kInf;
    x_warm = inner.x;
    return inner.value - ab - th * norm(l);
  };

  auto record = [&](const Vec& l, double v) {
    if (v > result.value) {
      result.value = v;
      result.l = l;
      result.x = x_warm;
    }
  };

  const auto starts = top_indices(h, degenerate ? 1 : std::min<std::size_t>(cfg.n_starts, 4));
  for (std::size_t idx : starts) {
    auto ctl = pool.control(idx);
    x_warm.assign(ctl.begin(), ctl.end());
    if (degenerate) {
      record(pool_l[idx], phi(pool_l[idx]));
      continue;
    }
    // Outer search: Nelder-Mead on l, expressed through a one-off Problem
    // so the shared local search can drive it.
    Problem::Spec spec;
    spec.name = "two_stage_outer";
    spec.dim_control = q;
    spec.dim_image = 1;
    spec.objective = [](std::span<const double>, std::span<double> f) { f[0] = 0.0; };
    spec.feasible = [](std::span<const double>) { return true; };
    spec.unit_map = [](std::span<const double>, std::span<double>) {};
    spec.control_scale = l_scale;
    Problem outer(std::move(spec));
    ControlObjective obj = [&](std::span<const double> l) {
      const double v = phi(l);
      record(Vec(l.begin(), l.end()), v);
      return v;
    };
    std::size_t evals = 0;
    local_search(obj, outer, pool_l[idx], 0.02, 200, 1e-9, evals);
  }
  if (!std::isfinite(result.value))
    throw SolverFailure("two-stage: inner stage infeasible at every outer start");
  return result;
}

}  // namespace boundscan
