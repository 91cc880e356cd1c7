#ifndef BOUNDSCAN_BOUNDS_HPP_
#define BOUNDSCAN_BOUNDS_HPP_

#include "boundscan/types.hpp"

namespace boundscan {

// Componentwise enclosure [lower_i, upper_i] of the image set.
struct ComponentBounds {
  enum class Source { kAnalytic, kSampled };

  Vec lower;
  Vec upper;
  Source source = Source::kAnalytic;
  std::size_t n_samples = 0;  // only meaningful for kSampled

  std::size_t dim() const { return lower.size(); }
  void validate() const;
};

}  // namespace boundscan

#endif  // BOUNDSCAN_BOUNDS_HPP_
