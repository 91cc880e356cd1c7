#ifndef BOUNDSCAN_TYPES_HPP_
#define BOUNDSCAN_TYPES_HPP_

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace boundscan {

// Points in the image space R^m, controls in R^d, base points, orients and
// coefficient vectors all share this representation.
using Vec = std::vector<double>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Tolerance on every cone inequality and on unit-norm checks.
inline constexpr double kTolGeom = 1e-12;

struct Interval {
  double lo;
  double hi;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double dot(std::span<const double> u, std::span<const double> v);
double norm(std::span<const double> u);
Vec subtract(std::span<const double> u, std::span<const double> v);

void require_same_dim(std::span<const double> u, std::span<const double> v,
                      const char* what);
void require_unit(std::span<const double> u, const char* what);
void require_finite(std::span<const double> u, const char* what);

std::string to_string(std::span<const double> u);

}  // namespace boundscan

#endif  // BOUNDSCAN_TYPES_HPP_
