#ifndef BOUNDSCAN_LOW_DISCREPANCY_HPP_
#define BOUNDSCAN_LOW_DISCREPANCY_HPP_

#include <cstdint>

#include "boundscan/types.hpp"

namespace boundscan {

// splitmix64; used wherever a seed must be expanded into reproducible bits.
std::uint64_t mix64(std::uint64_t x);

// Uniform double in [0, 1) built from the top 53 bits of a 64-bit word.
double unit_from_bits(std::uint64_t bits);

// Randomly shifted (Cranley-Patterson) Halton sequence in [0,1)^dim.
// The shift depends only on `seed`, so point i is identical across calls.
class HaltonSequence {
 public:
  HaltonSequence(std::size_t dim, std::uint64_t seed);

  std::size_t dim() const { return shift_.size(); }
  // Writes point number `index` (0-based) into `out`.
  void point(std::uint64_t index, std::span<double> out) const;
  Vec point(std::uint64_t index) const;

 private:
  Vec shift_;
};

// Radical inverse of `n` in base `base`.
double radical_inverse(std::uint64_t n, unsigned base);

unsigned nth_prime(std::size_t i);

}  // namespace boundscan

#endif  // BOUNDSCAN_LOW_DISCREPANCY_HPP_
