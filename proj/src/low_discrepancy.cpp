#include "boundscan/low_discrepancy.hpp"

#include <cmath>

namespace boundscan {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit_from_bits(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

unsigned nth_prime(std::size_t i) {
  static const unsigned kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                     31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
                                     73, 79, 83, 89, 97, 101, 103, 107, 109, 113};
  if (i < std::size(kPrimes)) return kPrimes[i];
  unsigned candidate = kPrimes[std::size(kPrimes) - 1];
  std::size_t found = std::size(kPrimes) - 1;
  while (found < i) {
    candidate += 2;
    bool prime = true;
    for (unsigned q = 3; q * q <= candidate; q += 2) {
      if (candidate % q == 0) {
        prime = false;
        break;
      }
    }
    if (prime) ++found;
  }
  return candidate;
}

double radical_inverse(std::uint64_t n, unsigned base) {
  const double inv = 1.0 / base;
  double factor = inv;
  double result = 0.0;
  while (n > 0) {
    result += static_cast<double>(n % base) * factor;
    n /= base;
    factor *= inv;
  }
  return result;
}

HaltonSequence::HaltonSequence(std::size_t dim, std::uint64_t seed) : shift_(dim) {
  std::uint64_t state = mix64(seed ^ 0x5bd1e995ULL);
  for (std::size_t j = 0; j < dim; ++j) {
    state = mix64(state);
    shift_[j] = unit_from_bits(state);
  }
}

void HaltonSequence::point(std::uint64_t index, std::span<double> out) const {
  // index + 1 skips the all-zero first Halton point.
  for (std::size_t j = 0; j < shift_.size(); ++j) {
    double u = radical_inverse(index + 1, nth_prime(j)) + shift_[j];
    if (u >= 1.0) u -= 1.0;
    out[j] = u;
  }
}

Vec HaltonSequence::point(std::uint64_t index) const {
  Vec out(shift_.size());
  point(index, out);
  return out;
}

}  // namespace boundscan
