#include "boundscan/types.hpp"

#include <cmath>
#include <sstream>

namespace boundscan {

double dot(std::span<const double> u, std::span<const double> v) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

double norm(std::span<const double> u) { return std::sqrt(dot(u, u)); }

Vec subtract(std::span<const double> u, std::span<const double> v) {
  Vec out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = u[i] - v[i];
  return out;
}

void require_same_dim(std::span<const double> u, std::span<const double> v,
                      const char* what) {
  if (u.size() != v.size()) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" +
                         std::to_string(u.size()) + " vs " +
                         std::to_string(v.size()) + ")");
  }
}

void require_unit(std::span<const double> u, const char* what) {
  const double n = norm(u);
  if (!(std::abs(n - 1.0) <= kTolGeom)) {
    std::ostringstream os;
    os.precision(17);
    os << what << ": orient must have unit norm, got |v| = " << n;
    throw std::invalid_argument(os.str());
  }
}

void require_finite(std::span<const double> u, const char* what) {
  for (double x : u) {
    if (!std::isfinite(x)) {
      throw std::invalid_argument(std::string(what) + ": non-finite entry");
    }
  }
}

std::string to_string(std::span<const double> u) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (i) os << ", ";
    os << u[i];
  }
  os << ')';
  return os.str();
}

}  // namespace boundscan
