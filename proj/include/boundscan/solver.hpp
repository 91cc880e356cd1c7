#ifndef BOUNDSCAN_SOLVER_HPP_
#define BOUNDSCAN_SOLVER_HPP_

#include <cstdint>
#include <functional>

#include "boundscan/problems.hpp"
#include "boundscan/types.hpp"

namespace boundscan {

enum class SolverMethod { kDirectMultistart, kTwoStage };

struct SolverConfig {
  std::size_t n_starts = 8;
  // Cap on local-search evaluations summed over all starts.
  std::size_t budget = 20000;
  // Cap per start. Fixed rather than budget / n_starts so that adding starts
  // never changes the searches already run.
  std::size_t local_budget = 1500;
  // Simplex size and compass step at which a local search stops, relative
  // to the problem's control scale.
  double local_tol = 1e-10;
  // Number of low-discrepancy controls screened for start selection.
  std::size_t pool_size = 2048;
  std::uint64_t seed = 0;
  SolverMethod method = SolverMethod::kDirectMultistart;
  // Residual accepted by the inner stage of the two-stage method.
  double tol_constraint = 1e-9;

  void validate() const;
};

struct LocalOptimum {
  Vec x;
  double value = -kInf;
  std::size_t start_index = 0;
};

struct MaximizeResult {
  Vec best_x;
  double best_value = -kInf;
  std::size_t evaluations = 0;
  std::vector<LocalOptimum> all_local_optima;
};

using ControlObjective = std::function<double(std::span<const double> x)>;
using ImageObjective = std::function<double(std::span<const double> f)>;

// Feasible low-discrepancy controls and their images, computed once and
// shared by every scalarization of the same problem.
class ImagePool {
 public:
  ImagePool(const Problem& problem, std::size_t size, std::uint64_t seed);

  std::size_t size() const { return controls_.size(); }
  std::span<const double> control(std::size_t i) const {
    return {controls_[i].data(), controls_[i].size()};
  }
  std::span<const double> image(std::size_t i) const {
    return {images_[i].data(), images_[i].size()};
  }
  const std::vector<Vec>& images() const { return images_; }

 private:
  std::vector<Vec> controls_;
  std::vector<Vec> images_;
};

// Multistart Nelder-Mead over the problem's admissible set. Infeasible
// trial points score -inf. Starts are the n_starts best of pool_size
// low-discrepancy samples (ties to the lower sample index).
MaximizeResult maximize(const ControlObjective& objective, const Problem& problem,
                        const SolverConfig& cfg);

// Same search for an objective of the image f(x); start screening reuses
// the pool's cached images.
MaximizeResult maximize_image(const ImageObjective& objective, const Problem& problem,
                              const ImagePool& pool, const SolverConfig& cfg);

// Single local search from x0 (must be feasible). Returns the local optimum
// and adds the evaluations used to `evaluations`.
LocalOptimum local_search(const ControlObjective& objective, const Problem& problem,
                          std::span<const double> x0, double initial_step, std::size_t budget,
                          double local_tol, std::size_t& evaluations);

// Orthonormal basis of the complement of unit b, by Gram-Schmidt on the
// coordinate axes in index order.
std::vector<Vec> orthonormal_complement(std::span<const double> b);

struct TwoStageResult {
  double value = -kInf;  // sup over l of G(l) - <a,b> - theta |l|
  Vec l;
  Vec x;
  std::size_t evaluations = 0;
};

// Inner stage: G(l) = sup <f(x), b> s.t. <f(x) - a, basis_j> = l_j, solved by
// an augmented Lagrangian continuation; -inf when the residual cannot be
// brought under tol_constraint. Outer stage: multistart Nelder-Mead over l.
TwoStageResult two_stage_maximize(const Problem& problem, std::span<const double> a,
                                  std::span<const double> b, double eta,
                                  const std::vector<Vec>& basis, const SolverConfig& cfg,
                                  const ImagePool& pool);

// Inner stage alone, exposed for testing. `x_warm` may be empty.
struct InnerResult {
  double value = -kInf;
  Vec x;
  double residual = kInf;
};
InnerResult two_stage_inner(const Problem& problem, std::span<const double> a,
                            std::span<const double> b, const std::vector<Vec>& basis,
                            std::span<const double> l, const SolverConfig& cfg,
                            const ImagePool& pool, std::span<const double> x_warm,
                            std::size_t& evaluations);

}  // namespace boundscan

#endif  // BOUNDSCAN_SOLVER_HPP_
