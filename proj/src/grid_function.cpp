#include "boundscan/grid_function.hpp"

#include <algorithm>
#include <cmath>

namespace boundscan {

Grid::Grid(std::vector<Vec> nodes, Vec weights) : nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.empty() || nodes_.size() != weights_.size())
    throw std::invalid_argument("grid: need one weight per node and at least one node");
  for (double w : weights_)
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("grid: weights must be positive");
  for (const Vec& n : nodes_)
    if (n.size() != nodes_[0].size()) throw DimensionError("grid: nodes of mixed dimension");
}

Grid Grid::trapezoid(double lo, double hi, std::size_t n) {
  if (!(hi > lo) || n < 1) throw std::invalid_argument("trapezoid grid: need lo < hi and n >= 1");
  if (n == 1) return Grid({{0.5 * (lo + hi)}}, {hi - lo});
  const double h = (hi - lo) / static_cast<double>(n - 1);
  std::vector<Vec> nodes(n);
  Vec weights(n, h);
  for (std::size_t i = 0; i < n; ++i) nodes[i] = {lo + h * static_cast<double>(i)};
  nodes[n - 1] = {hi};
  weights[0] = weights[n - 1] = 0.5 * h;
  return Grid(std::move(nodes), std::move(weights));
}

Grid Grid::tensor(const Vec& lo, const Vec& hi, const std::vector<std::size_t>& counts) {
  if (lo.empty() || lo.size() != hi.size() || lo.size() != counts.size())
    throw DimensionError("tensor grid: lo, hi and counts must have equal nonzero length");
  std::vector<Grid> axes;
  for (std::size_t j = 0; j < lo.size(); ++j) axes.push_back(trapezoid(lo[j], hi[j], counts[j]));
  std::vector<Vec> nodes{Vec{}};
  Vec weights{1.0};
  for (const Grid& g : axes) {
    std::vector<Vec> next_nodes;
    Vec next_weights;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      for (std::size_t k = 0; k < g.size(); ++k) {
        Vec n = nodes[i];
        n.push_back(g.nodes()[k][0]);
        next_nodes.push_back(std::move(n));
        next_weights.push_back(weights[i] * g.weights()[k]);
      }
    nodes = std::move(next_nodes);
    weights = std::move(next_weights);
  }
  return Grid(std::move(nodes), std::move(weights));
}

double Grid::measure() const {
  double s = 0.0;
  for (double w : weights_) s += w;
  return s;
}

GridFunction::GridFunction(std::shared_ptr<const Grid> grid, Vec values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw std::invalid_argument("grid function: null grid");
  if (values_.size() != grid_->size()) throw DimensionError("grid function: one value per node");
  require_finite(values_, "grid function values");
}

GridFunction GridFunction::sample(std::shared_ptr<const Grid> grid,
                                  const std::function<double(std::span<const double>)>& fn) {
  Vec values;
  values.reserve(grid->size());
  for (const Vec& n : grid->nodes()) values.push_back(fn(n));
  return GridFunction(std::move(grid), std::move(values));
}

double GridFunction::sup_norm() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

namespace {

void require_orient(const GridFunction& b) {
  if (std::abs(b.sup_norm() - 1.0) > 1e-9)
    throw std::invalid_argument("orient must have sup norm 1, got " + std::to_string(b.sup_norm()));
}

void require_shared(const GridFunction& u, const GridFunction& v) {
  if (u.grid_ptr() == v.grid_ptr()) return;
  if (u.grid().size() != v.grid().size() || u.grid().weights() != v.grid().weights())
    throw DimensionError("grid functions live on different grids");
}

}  // namespace

double cb_scaling_factor(const GridFunction& b) {
  require_orient(b);
  const Vec& w = b.grid().weights();
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * b.values()[i] * b.values()[i];
  if (!(s > 0.0)) throw std::invalid_argument("orient has zero L2 norm");
  return 1.0 / s;
}

double cb_tv_norm(const GridFunction& b) {
  const double c = cb_scaling_factor(b);
  const Vec& w = b.grid().weights();
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * std::abs(b.values()[i]);
  return c * s;
}

namespace {

struct CbData {
  Vec d;  // f - a
  const Vec* b;
  double c;
  double y0;  // c sum w d b
};

CbData prepare(const GridFunction& f, const GridFunction& a, const GridFunction& b) {
  require_shared(f, a);
  require_shared(f, b);
  CbData data;
  data.c = cb_scaling_factor(b);
  data.b = &b.values();
  const Vec& w = b.grid().weights();
  data.d.resize(w.size());
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    data.d[i] = f.values()[i] - a.values()[i];
    s += w[i] * data.d[i] * b.values()[i];
  }
  data.y0 = data.c * s;
  return data;
}

// c sum w (d - y b) b reduces to y0 - y because c sum w b^2 = 1.
double g_of(const CbData& data, double eta, double y) {
  double m = 0.0;
  for (std::size_t i = 0; i < data.d.size(); ++i)
    m = std::max(m, std::abs(data.d[i] - y * (*data.b)[i]));
  return (data.y0 - y) - (1.0 - eta) * m;
}

}  // namespace

double cb_g(const GridFunction& f, const GridFunction& a, const GridFunction& b, double eta,
            double y) {
  return g_of(prepare(f, a, b), eta, y);
}

CbRootReport cb_h_solve(const GridFunction& f, const GridFunction& a, const GridFunction& b,
                        double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("sharpness must lie in (0, 1]");
  const CbData data = prepare(f, a, b);
  CbRootReport rep;
  rep.scaling = data.c;
  auto g = [&](double y) {
    const double v = g_of(data, eta, y);
    rep.probes.emplace_back(y, v);
    return v;
  };
  auto done = [](double y, double gy) { return std::abs(gy) <= 1e-9 * (1.0 + std::abs(y)); };

  // g(y0) = -(1 - eta) max|d - y0 b| <= 0, so the root lies at or below y0.
  double hi = data.y0;
  double g_hi = g(hi);
  if (done(hi, g_hi)) {
    rep.y = hi;
    rep.residual = std::abs(g_hi);
    return rep;
  }
  double delta = 1.0;
  double lo = hi - delta;
  double g_lo = g(lo);
  constexpr std::size_t kMaxIterations = 400;
  while (g_lo < 0.0) {
    if (++rep.iterations > kMaxIterations || !std::isfinite(lo))
      throw SolverFailure("cb_h_value: bracket expansion failed");
    hi = lo;
    g_hi = g_lo;
    delta *= 2.0;
    lo = data.y0 - delta;
    g_lo = g(lo);
  }
  if (done(lo, g_lo)) {
    rep.y = lo;
    rep.residual = std::abs(g_lo);
    return rep;
  }
  for (;;) {
    if (++rep.iterations > kMaxIterations) throw SolverFailure("cb_h_value: bisection did not converge");
    const double mid = 0.5 * (lo + hi);
    const double g_mid = g(mid);
    if (done(mid, g_mid) || mid == lo || mid == hi) {
      rep.y = mid;
      rep.residual = std::abs(g_mid);
      if (!done(mid, g_mid)) throw SolverFailure("cb_h_value: residual stalled above tolerance");
      return rep;
    }
    if (g_mid > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
}

double cb_h_value(const GridFunction& f, const GridFunction& a, const GridFunction& b, double eta) {
  return cb_h_solve(f, a, b, eta).y;
}

}  // namespace boundscan
