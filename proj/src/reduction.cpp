#include "boundscan/reduction.hpp"

#include <algorithm>
#include <cmath>

namespace boundscan {

void ComponentBounds::validate() const {
  if (lower.size() != upper.size() || lower.empty())
    throw DimensionError("component bounds: lower and upper must have equal nonzero length");
  require_finite(lower, "lower bounds");
  require_finite(upper, "upper bounds");
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (lower[i] > upper[i])
      throw std::invalid_argument("component bounds: lower > upper in coordinate " +
                                  std::to_string(i + 1));
}

ComponentBounds component_bounds(const Problem& problem, std::size_t n_samples, std::uint64_t seed,
                                 double widen) {
  if (n_samples < 1) throw std::invalid_argument("component_bounds: n_samples must be >= 1");
  if (!(widen >= 0.0)) throw std::invalid_argument("component_bounds: widen must be >= 0");
  const std::size_t m = problem.dim_image();
  ComponentBounds out;
  out.lower.assign(m, kInf);
  out.upper.assign(m, -kInf);
  out.source = ComponentBounds::Source::kSampled;
  Vec f(m);
  for (const Vec& x : problem.sample(n_samples, seed)) {
    if (!problem.feasible(x)) continue;
    problem.evaluate(x, f);
    ++out.n_samples;
    for (std::size_t i = 0; i < m; ++i) {
      out.lower[i] = std::min(out.lower[i], f[i]);
      out.upper[i] = std::max(out.upper[i], f[i]);
    }
  }
  if (out.n_samples == 0)
    throw SolverFailure("component_bounds: no feasible sample for '" + problem.name() + "'");
  for (std::size_t i = 0; i < m; ++i) {
    const double pad = widen * (out.upper[i] - out.lower[i]);
    out.lower[i] -= pad;
    out.upper[i] += pad;
  }
  out.validate();
  return out;
}

std::vector<std::size_t> ParamBox::free_coordinates() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fixed.size(); ++i)
    if (!fixed[i]) out.push_back(i);
  return out;
}

bool ParamBox::contains(std::span<const double> a, double tol) const {
  if (a.size() != lo.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < lo[i] - tol || a[i] > hi[i] + tol) return false;
  return true;
}

namespace {

void check_pivot(const ComponentBounds& bounds, std::span<const double> b, std::size_t iota) {
  bounds.validate();
  if (bounds.dim() < 2) throw std::invalid_argument("dimension reduction needs m >= 2");
  if (b.size() != bounds.dim()) throw DimensionError("orient and bounds differ in dimension");
  if (iota >= bounds.dim())
    throw std::out_of_range("pivot " + std::to_string(iota) + " out of range for m = " +
                            std::to_string(bounds.dim()));
}

double pivot_value(const ComponentBounds& bounds, std::span<const double> b, std::size_t iota) {
  return b[iota] >= 0.0 ? bounds.lower[iota] : bounds.upper[iota];
}

Interval free_interval(const ComponentBounds& bounds, double bi, std::size_t i, std::size_t iota) {
  const double u = std::abs(bounds.lower[iota]) * bi;
  const double v = std::abs(bounds.upper[iota]) * bi;
  return {bounds.lower[i] - std::max(u, v), bounds.upper[i] - std::min(u, v)};
}

}  // namespace

ParamBox parameter_range(const ComponentBounds& bounds, std::span<const double> b, std::size_t iota) {
  check_pivot(bounds, b, iota);
  const std::size_t m = bounds.dim();
  ParamBox box{Vec(m), Vec(m), std::vector<bool>(m, false)};
  for (std::size_t i = 0; i < m; ++i) {
    if (i == iota) {
      box.lo[i] = box.hi[i] = pivot_value(bounds, b, iota);
      box.fixed[i] = true;
    } else {
      const Interval r = free_interval(bounds, b[i], i, iota);
      box.lo[i] = r.lo;
      box.hi[i] = r.hi;
    }
  }
  return box;
}

ParamBox parameter_range_envelope(const ComponentBounds& bounds, std::span<const double> b,
                                  std::size_t iota) {
  check_pivot(bounds, b, iota);
  const std::size_t m = bounds.dim();
  const double reach = std::max(std::abs(bounds.lower[iota]), std::abs(bounds.upper[iota]));
  ParamBox box{Vec(m), Vec(m), std::vector<bool>(m, false)};
  for (std::size_t i = 0; i < m; ++i) {
    if (i == iota) {
      box.lo[i] = box.hi[i] = pivot_value(bounds, b, iota);
      box.fixed[i] = true;
    } else {
      box.lo[i] = bounds.lower[i] - reach;
      box.hi[i] = bounds.upper[i] + reach;
    }
  }
  return box;
}

IntersectionResult parameter_range_intersection(const ComponentBounds& bounds,
                                                std::span<const double> b,
                                                const std::vector<std::size_t>& pivots) {
  std::vector<std::size_t> set = pivots;
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  if (set.size() < 2) throw std::invalid_argument("pivot set needs at least two distinct indices");
  for (std::size_t iota : set) check_pivot(bounds, b, iota);

  auto tag = [](std::size_t i) { return std::to_string(i + 1); };
  for (std::size_t iota : set) {
    for (std::size_t other : set) {
      if (other == iota) continue;
      const Interval r = free_interval(bounds, b[other], other, iota);
      for (double v : {bounds.lower[iota], bounds.upper[iota]}) {
        if (v < r.lo - kTolGeom || v > r.hi + kTolGeom)
          return Infeasible{"pivot_membership",
                            "bound " + std::to_string(v) + " of coordinate " + tag(iota) +
                                " lies outside [" + std::to_string(r.lo) + ", " +
                                std::to_string(r.hi) + "] from pivot " + tag(other)};
      }
    }
  }

  const std::size_t m = bounds.dim();
  ParamBox box{Vec(m), Vec(m), std::vector<bool>(m, false)};
  for (std::size_t i = 0; i < m; ++i) {
    if (std::binary_search(set.begin(), set.end(), i)) {
      box.lo[i] = box.hi[i] = pivot_value(bounds, b, i);
      box.fixed[i] = true;
      continue;
    }
    Interval acc{-kInf, kInf};
    for (std::size_t iota : set) {
      const Interval r = free_interval(bounds, b[i], i, iota);
      acc.lo = std::max(acc.lo, r.lo);
      acc.hi = std::min(acc.hi, r.hi);
    }
    if (acc.lo > acc.hi)
      return Infeasible{"free_intersection",
                        "intervals for coordinate " + tag(i) + " do not intersect"};
    box.lo[i] = acc.lo;
    box.hi[i] = acc.hi;
  }
  return box;
}

std::vector<Vec> sample_param_grid(const ParamBox& box, const std::vector<std::size_t>& counts) {
  const std::vector<std::size_t> free = box.free_coordinates();
  if (counts.size() != free.size())
    throw DimensionError("sample_param_grid: " + std::to_string(counts.size()) +
                         " counts for " + std::to_string(free.size()) + " free coordinates");
  std::vector<Vec> axes(free.size());
  std::size_t total = 1;
  for (std::size_t j = 0; j < free.size(); ++j) {
    if (counts[j] < 1) throw std::invalid_argument("sample_param_grid: counts must be >= 1");
    const double lo = box.lo[free[j]], hi = box.hi[free[j]];
    if (counts[j] == 1) {
      axes[j] = {0.5 * (lo + hi)};
    } else {
      for (std::size_t t = 0; t < counts[j]; ++t)
        axes[j].push_back(t + 1 == counts[j]
                              ? hi
                              : lo + (hi - lo) * static_cast<double>(t) /
                                         static_cast<double>(counts[j] - 1));
    }
    total *= counts[j];
  }
  std::vector<Vec> out;
  out.reserve(total);
  std::vector<std::size_t> digit(free.size(), 0);
  for (std::size_t n = 0; n < total; ++n) {
    Vec a = box.lo;
    for (std::size_t j = 0; j < free.size(); ++j) a[free[j]] = axes[j][digit[j]];
    out.push_back(std::move(a));
    for (std::size_t j = free.size(); j-- > 0;) {
      if (++digit[j] < counts[j]) break;
      digit[j] = 0;
    }
  }
  return out;
}

std::size_t smallest_range_coordinate(const ComponentBounds& bounds) {
  bounds.validate();
  std::size_t best = 0;
  for (std::size_t i = 1; i < bounds.dim(); ++i)
    if (bounds.upper[i] - bounds.lower[i] < bounds.upper[best] - bounds.lower[best]) best = i;
  return best;
}

}  // namespace boundscan
