#include "boundscan/scalarization.hpp"

#include <algorithm>
#include <cmath>

namespace boundscan {

double theta(double eta) {
  if (!(eta > 0.0 && eta <= 1.0))
    throw std::invalid_argument("theta: sharpness must lie in (0, 1], got " + std::to_string(eta));
  if (eta == 1.0) return 0.0;
  return (1.0 - eta) / std::sqrt(eta * (2.0 - eta));
}

ScalarizationParams::ScalarizationParams(Vec base, Vec orient, double sharpness, double radius,
                                         std::size_t level)
    : base_(std::move(base)),
      orient_(std::move(orient)),
      sharpness_(sharpness),
      radius_(radius),
      level_(level),
      eps_(radius / 3.0) {
  require_same_dim(base_, orient_, "scalarization parameters");
  require_finite(base_, "base");
  require_unit(orient_, "orient");
  if (!(sharpness_ > 0.0 && sharpness_ <= 1.0))
    throw std::invalid_argument("sharpness must lie in (0, 1]");
  if (!(radius_ > 0.0)) throw std::invalid_argument("radius must be positive");
  if (level_ < 1) throw std::invalid_argument("level must be >= 1");
}

ScalarizationParams ScalarizationParams::with_level(std::size_t level) const {
  return ScalarizationParams(base_, orient_, sharpness_, radius_, level);
}

namespace {

struct Decomposition {
  double along;  // <f - a, b>
  double perp;   // |(f - a) - <f - a, b> b|
};

Decomposition decompose(std::span<const double> f, std::span<const double> a,
                        std::span<const double> b) {
  require_same_dim(f, a, "h_value");
  const std::size_t m = f.size();
  double c = 0.0;
  for (std::size_t i = 0; i < m; ++i) c += (f[i] - a[i]) * b[i];
  double p2 = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = (f[i] - a[i]) - c * b[i];
    p2 += r * r;
  }
  return {c, std::sqrt(p2)};
}

// Distance to admissibility for the exact scalarization set; 0 when the set
// is nonempty.
double violation(const Decomposition& d, double h, const ScalarizationParams& p) {
  const double eps = p.eps();
  double v = 0.0;
  const double eta = p.sharpness();
  const double p_max = eps * std::sqrt(eta * (2.0 - eta));
  if (d.perp > p_max) v += d.perp - p_max;
  if (h < 0.0) v -= h;
  const double s = d.perp < eps ? std::sqrt(eps * eps - d.perp * d.perp) : 0.0;
  if (d.along - s > p.cap()) v += d.along - s - p.cap();
  return v;
}

std::optional<Interval> set_from(const Decomposition& d, double h, double eps, double cap) {
  const double hi = std::min(cap, h);
  double lo = 0.0;
  if (std::isfinite(eps)) {
    if (d.perp > eps + kTolGeom) return std::nullopt;
    const double s = std::sqrt(std::max(0.0, eps * eps - d.perp * d.perp));
    lo = std::max(0.0, d.along - s);
  }
  if (lo > hi + kTolGeom) return std::nullopt;
  return Interval{lo, hi};
}

std::optional<Interval> set_from(const Decomposition& d, double h, const ScalarizationParams& p) {
  return set_from(d, h, p.eps(), p.cap());
}

}  // namespace

double h_value(std::span<const double> f, const ScalarizationParams& p) {
  const Decomposition d = decompose(f, p.base(), p.orient());
  return d.along - theta(p.sharpness()) * d.perp;
}

double phi(std::span<const double> f, const ScalarizationParams& p) {
  return std::min(std::max(h_value(f, p), 0.0), p.cap());
}

std::optional<Interval> scalarization_set(std::span<const double> f, const ScalarizationParams& p) {
  const Decomposition d = decompose(f, p.base(), p.orient());
  return set_from(d, d.along - theta(p.sharpness()) * d.perp, p);
}

std::optional<double> phi_exact(std::span<const double> f, const ScalarizationParams& p) {
  auto s = scalarization_set(f, p);
  if (!s) return std::nullopt;
  return s->hi;
}

double l2_h_value(std::span<const double> f_coeffs, std::span<const double> a_coeffs,
                  std::span<const double> b_coeffs, double eta) {
  require_same_dim(f_coeffs, b_coeffs, "l2_h_value");
  require_unit(b_coeffs, "b coefficients");
  const Decomposition d = decompose(f_coeffs, a_coeffs, b_coeffs);
  return d.along - theta(eta) * d.perp;
}

ScalarizationEngine::ScalarizationEngine(const Problem& problem, SolverConfig solver,
                                         ScalarizationOptions options,
                                         std::shared_ptr<const ImagePool> pool)
    : problem_(problem), solver_(solver), options_(options), pool_(std::move(pool)) {
  solver_.validate();
  if (!pool_) pool_ = std::make_shared<ImagePool>(problem_, solver_.pool_size, solver_.seed);
}

bool ScalarizationEngine::exact(const ScalarizationParams& p) const {
  return options_.truncation == Truncation::kExact && std::isfinite(p.eps());
}

double ScalarizationEngine::level_tolerance(const ScalarizationParams& p) const {
  return options_.tol_level * (1.0 + p.cap());
}

MaximizeResult ScalarizationEngine::search(const ScalarizationParams& p) const {
  if (p.dim() != problem_.dim_image())
    throw DimensionError("parameters have dimension " + std::to_string(p.dim()) +
                         ", problem image has " + std::to_string(problem_.dim_image()));
  const double th = theta(p.sharpness());
  if (solver_.method == SolverMethod::kTwoStage && !exact(p)) {
    const TwoStageResult t = two_stage_maximize(problem_, p.base(), p.orient(), p.sharpness(),
                                                orthonormal_complement(p.orient()), solver_, *pool_);
    MaximizeResult r;
    r.best_x = t.x;
    r.best_value = h_value(problem_.evaluate(t.x), p);
    r.evaluations = t.evaluations;
    r.all_local_optima.push_back({t.x, r.best_value, 0});
    return r;
  }
  if (!exact(p)) {
    return maximize_image(
        [&](std::span<const double> f) {
          const Decomposition d = decompose(f, p.base(), p.orient());
          return d.along - th * d.perp;
        },
        problem_, *pool_, solver_);
  }
  // Admissible points score H >= 0; the rest score below -1, ordered by how
  // far they are from admissibility.
  return maximize_image(
      [&](std::span<const double> f) {
        const Decomposition d = decompose(f, p.base(), p.orient());
        const double h = d.along - th * d.perp;
        if (set_from(d, h, p)) return h;
        return -1.0 - violation(d, h, p);
      },
      problem_, *pool_, solver_);
}

ScalarValueReport ScalarizationEngine::report_from(const ScalarizationParams& p,
                                                   const MaximizeResult& r) const {
  ScalarValueReport rep;
  rep.evaluations = r.evaluations;
  const bool ex = exact(p);
  if (ex && r.best_value < -0.5) {
    rep.empty = true;
    return rep;
  }
  rep.h_raw = r.best_value;
  rep.value = std::min(std::max(rep.h_raw, 0.0), p.cap());
  rep.clipped = std::max(rep.h_raw, 0.0) > p.cap();

  const double tol_v = options_.tol_value * (1.0 + std::abs(rep.value));
  for (const LocalOptimum& opt : r.all_local_optima) {
    Witness w;
    w.x = opt.x;
    w.f = problem_.evaluate(opt.x);
    w.h = h_value(w.f, p);
    if (ex) {
      auto v = phi_exact(w.f, p);
      if (!v) continue;
      w.phi = *v;
    } else {
      w.phi = phi(w.f, p);
    }
    if (w.h < -kTolGeom || w.phi < rep.value - tol_v) continue;
    rep.argmax_set.push_back(std::move(w));
  }
  std::sort(rep.argmax_set.begin(), rep.argmax_set.end(),
            [](const Witness& u, const Witness& v) { return u.x < v.x; });
  const Vec& scale = problem_.control_scale();
  auto same = [&](const Witness& u, const Witness& v) {
    for (std::size_t j = 0; j < u.x.size(); ++j)
      if (std::abs(u.x[j] - v.x[j]) > 1e-9 * scale[j]) return false;
    return true;
  };
  rep.argmax_set.erase(std::unique(rep.argmax_set.begin(), rep.argmax_set.end(), same),
                       rep.argmax_set.end());
  return rep;
}

ScalarValueReport ScalarizationEngine::value(const ScalarizationParams& p) const {
  return report_from(p, search(p));
}

WitnessCheck ScalarizationEngine::is_boundary_witness(const ScalarizationParams& p) const {
  WitnessCheck check;
  check.at_k = value(p);
  if (!std::isfinite(p.eps())) {
    check.passed = true;
    return check;
  }
  check.at_next = value(p.with_level(p.level() + 1));
  check.passed = std::abs(check.at_next->value - check.at_k.value) <= level_tolerance(p);
  return check;
}

std::vector<LevelWitness> ScalarizationEngine::level_sweep(const Vec& base, const Vec& orient,
                                                           double sharpness, double radius,
                                                           std::size_t k_max) const {
  std::vector<LevelWitness> out;
  const ScalarizationParams p1(base, orient, sharpness, radius, 1);
  if (!std::isfinite(p1.eps())) {
    ScalarValueReport rep = value(p1);
    if (!rep.argmax_set.empty()) out.push_back({1, rep, rep.value});
    return out;
  }
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");

  if (!exact(p1)) {
    // H does not depend on k, so one search serves every level.
    const MaximizeResult r = search(p1);
    const double h_pos = std::max(r.best_value, 0.0);
    for (std::size_t k = 1; k <= k_max; ++k) {
      const ScalarizationParams pk = p1.with_level(k);
      const double vk = std::min(h_pos, pk.cap());
      const double vn = std::min(h_pos, pk.cap() + pk.eps());
      if (std::abs(vn - vk) > level_tolerance(pk)) continue;
      ScalarValueReport rep = report_from(pk, r);
      if (!rep.argmax_set.empty()) out.push_back({k, std::move(rep), vn});
      break;
    }
    return out;
  }

  // Exact mode. best_h[k] is the largest H over pool points whose
  // scalarization set is nonempty at level k, a lower bound for the sup.
  const double eps = p1.eps();
  const double th = theta(sharpness);
  std::vector<double> best_h(k_max + 2, -kInf);
  for (std::size_t i = 0; i < pool_->size(); ++i) {
    const Decomposition d = decompose(pool_->image(i), base, orient);
    const double h = d.along - th * d.perp;
    auto cap = [&](std::size_t k) { return static_cast<double>(k) * eps; };
    if (!set_from(d, h, eps, cap(k_max + 1))) continue;
    const double s = std::sqrt(std::max(0.0, eps * eps - d.perp * d.perp));
    double k_min = std::ceil((d.along - s - kTolGeom) / eps);
    k_min = std::max(k_min, 1.0);
    if (k_min > static_cast<double>(k_max + 1)) continue;
    auto k = static_cast<std::size_t>(k_min);
    // Guard the ceil against round-off by testing membership directly.
    while (k > 1 && set_from(d, h, eps, cap(k - 1))) --k;
    while (k <= k_max + 1 && !set_from(d, h, eps, cap(k))) ++k;
    if (k <= k_max + 1) best_h[k] = std::max(best_h[k], h);
  }
  for (std::size_t k = 2; k <= k_max + 1; ++k) best_h[k] = std::max(best_h[k], best_h[k - 1]);

  std::vector<std::optional<ScalarValueReport>> cache(k_max + 2);
  auto report_at = [&](std::size_t k) -> const ScalarValueReport& {
    if (!cache[k]) cache[k] = value(p1.with_level(k));
    return *cache[k];
  };
  double passed_value = -kInf;
  for (std::size_t k = 1; k <= k_max; ++k) {
    if (!std::isfinite(best_h[k])) continue;
    const ScalarizationParams pk = p1.with_level(k);
    const double tol = level_tolerance(pk);
    // After a pass, levels whose pool sup does not exceed the passed value
    // would only repeat its witnesses.
    if (best_h[k] <= passed_value + tol) continue;
    const double lower_next = std::min(pk.cap() + eps, best_h[k + 1]);
    if (lower_next > pk.cap() + tol) continue;  // V(k+1) > k eps >= V(k)
    const ScalarValueReport& rk = report_at(k);
    if (rk.argmax_set.empty()) continue;
    const ScalarValueReport& rn = report_at(k + 1);
    if (std::abs(rn.value - rk.value) <= tol) {
      out.push_back({k, rk, rn.value});
      passed_value = rk.value;
    }
  }
  return out;
}

ScalarValueReport value(const Problem& problem, const ScalarizationParams& p,
                        const SolverConfig& solver) {
  return ScalarizationEngine(problem, solver).value(p);
}

WitnessCheck is_boundary_witness(const Problem& problem, const ScalarizationParams& p,
                                 const SolverConfig& solver) {
  return ScalarizationEngine(problem, solver).is_boundary_witness(p);
}

}  // namespace boundscan
