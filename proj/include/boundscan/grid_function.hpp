#ifndef BOUNDSCAN_GRID_FUNCTION_HPP_
#define BOUNDSCAN_GRID_FUNCTION_HPP_

#include <functional>
#include <memory>

#include "boundscan/types.hpp"

namespace boundscan {

// Quadrature nodes on a box index set with positive weights summing to its
// Lebesgue measure.
class Grid {
 public:
  Grid(std::vector<Vec> nodes, Vec weights);

  // n >= 2 equispaced nodes on [lo, hi] with trapezoidal weights; n = 1
  // gives the midpoint with weight hi - lo.
  static Grid trapezoid(double lo, double hi, std::size_t n);
  // Tensor product of 1D trapezoid grids over a box.
  static Grid tensor(const Vec& lo, const Vec& hi, const std::vector<std::size_t>& counts);

  std::size_t size() const { return weights_.size(); }
  std::size_t dim() const { return nodes_.empty() ? 0 : nodes_[0].size(); }
  const std::vector<Vec>& nodes() const { return nodes_; }
  const Vec& weights() const { return weights_; }
  double measure() const;

 private:
  std::vector<Vec> nodes_;
  Vec weights_;
};

class GridFunction {
 public:
  GridFunction(std::shared_ptr<const Grid> grid, Vec values);
  static GridFunction sample(std::shared_ptr<const Grid> grid,
                             const std::function<double(std::span<const double>)>& fn);

  const Grid& grid() const { return *grid_; }
  const std::shared_ptr<const Grid>& grid_ptr() const { return grid_; }
  const Vec& values() const { return values_; }
  double sup_norm() const;

 private:
  std::shared_ptr<const Grid> grid_;
  Vec values_;
};

// c = 1 / sum w b^2 for an orient with sup norm 1.
double cb_scaling_factor(const GridFunction& b);

// Total variation c sum w |b| of the measure with density c b.
double cb_tv_norm(const GridFunction& b);

struct CbRootReport {
  double y = 0.0;
  double residual = 0.0;
  double scaling = 0.0;
  std::size_t iterations = 0;
  // Every (y, g(y)) evaluated, in evaluation order.
  std::vector<std::pair<double, double>> probes;
};

// Root of g(y) = c sum w (f - a - y b) b - (1 - eta) max |f - a - y b|, which
// is strictly decreasing with slope in [-(2 - eta), -eta]. The bracket grows
// geometrically below the linear root y0 = c sum w (f - a) b, then bisection
// runs to |g| <= 1e-9 (1 + |y|). Throws SolverFailure past the iteration cap.
CbRootReport cb_h_solve(const GridFunction& f, const GridFunction& a, const GridFunction& b,
                        double eta);

double cb_h_value(const GridFunction& f, const GridFunction& a, const GridFunction& b, double eta);

// g itself, for residual checks.
double cb_g(const GridFunction& f, const GridFunction& a, const GridFunction& b, double eta,
            double y);

}  // namespace boundscan

#endif  // BOUNDSCAN_GRID_FUNCTION_HPP_
