#ifndef BOUNDSCAN_SCALARIZATION_HPP_
#define BOUNDSCAN_SCALARIZATION_HPP_

#include <memory>
#include <optional>

#include "boundscan/problems.hpp"
#include "boundscan/solver.hpp"
#include "boundscan/types.hpp"

namespace boundscan {

// (1 - eta) / sqrt(eta (2 - eta)), the cotangent of the cone half-angle.
double theta(double eta);

class ScalarizationParams {
 public:
  ScalarizationParams(Vec base, Vec orient, double sharpness, double radius = kInf,
                      std::size_t level = 1);

  const Vec& base() const { return base_; }
  const Vec& orient() const { return orient_; }
  double sharpness() const { return sharpness_; }
  double radius() const { return radius_; }
  std::size_t level() const { return level_; }
  double eps() const { return eps_; }
  // k * eps; +inf for an untruncated cone.
  double cap() const { return static_cast<double>(level_) * eps_; }
  std::size_t dim() const { return base_.size(); }

  ScalarizationParams with_level(std::size_t level) const;

 private:
  Vec base_;
  Vec orient_;
  double sharpness_;
  double radius_;
  std::size_t level_;
  double eps_;
};

// <f - a, b> - theta(eta) |(f - a) - <f - a, b> b|.
double h_value(std::span<const double> f, const ScalarizationParams& p);

// min{ h_value^+, k eps }.
double phi(std::span<const double> f, const ScalarizationParams& p);

// How the finite-radius scalarization function is evaluated.
enum class Truncation {
  // min{H^+, k eps}; ignores the ball |f - a - y b| <= eps.
  kClosedForm,
  // Largest y in [0, k eps] with f - a - y b in the eps-spherical cone;
  // undefined when no such y exists.
  kExact,
};

// {y in [0, k eps] : f - a - y b in the spherical cone of radius eps}, which
// is the interval [max(0, c - s), min(k eps, H)] with c = <f - a, b>,
// s = sqrt(eps^2 - |perp|^2). nullopt when empty.
std::optional<Interval> scalarization_set(std::span<const double> f, const ScalarizationParams& p);

// sup of scalarization_set, or nullopt when it is empty.
std::optional<double> phi_exact(std::span<const double> f, const ScalarizationParams& p);

// h_value on truncated orthonormal-basis coefficients.
double l2_h_value(std::span<const double> f_coeffs, std::span<const double> a_coeffs,
                  std::span<const double> b_coeffs, double eta);

struct Witness {
  Vec x;
  Vec f;
  double phi = 0.0;
  double h = 0.0;
};

struct ScalarValueReport {
  double value = 0.0;
  std::vector<Witness> argmax_set;  // sorted lexicographically by x
  bool clipped = false;
  // Unclipped sup of H; in exact mode the sup over points with a nonempty
  // scalarization set.
  double h_raw = -kInf;
  // Exact mode only: no point with a nonempty scalarization set was found.
  bool empty = false;
  std::size_t evaluations = 0;
};

struct ScalarizationOptions {
  Truncation truncation = Truncation::kClosedForm;
  // Level test tolerance is tol_level * (1 + k eps).
  double tol_level = 1e-7;
  // argmax_set membership tolerance is tol_value * (1 + |V|).
  double tol_value = 1e-6;
};

struct WitnessCheck {
  bool passed = false;
  ScalarValueReport at_k;
  std::optional<ScalarValueReport> at_next;  // absent when r = inf
};

struct LevelWitness {
  std::size_t k = 1;
  ScalarValueReport report;
  double next_value = 0.0;
};

// Value functions and the level test for one problem, sharing an image pool
// across all parameters.
class ScalarizationEngine {
 public:
  ScalarizationEngine(const Problem& problem, SolverConfig solver, ScalarizationOptions options = {},
                      std::shared_ptr<const ImagePool> pool = nullptr);

  const Problem& problem() const { return problem_; }
  const SolverConfig& solver() const { return solver_; }
  const ScalarizationOptions& options() const { return options_; }
  const ImagePool& pool() const { return *pool_; }

  ScalarValueReport value(const ScalarizationParams& p) const;
  WitnessCheck is_boundary_witness(const ScalarizationParams& p) const;

  // All levels k in 1..k_max at which (a, b, k) passes the level test and
  // yields witnesses. With r = inf only k = 1 is examined and the level test
  // is skipped. In closed-form mode only the first passing level is
  // returned, since every later level repeats the same witnesses.
  std::vector<LevelWitness> level_sweep(const Vec& base, const Vec& orient, double sharpness,
                                        double radius, std::size_t k_max) const;

  double level_tolerance(const ScalarizationParams& p) const;

 private:
  MaximizeResult search(const ScalarizationParams& p) const;
  ScalarValueReport report_from(const ScalarizationParams& p, const MaximizeResult& r) const;
  bool exact(const ScalarizationParams& p) const;

  const Problem& problem_;
  SolverConfig solver_;
  ScalarizationOptions options_;
  std::shared_ptr<const ImagePool> pool_;
};

// Closed-form value with default options.
ScalarValueReport value(const Problem& problem, const ScalarizationParams& p,
                        const SolverConfig& solver);

WitnessCheck is_boundary_witness(const Problem& problem, const ScalarizationParams& p,
                                 const SolverConfig& solver);

}  // namespace boundscan

#endif  // BOUNDSCAN_SCALARIZATION_HPP_
