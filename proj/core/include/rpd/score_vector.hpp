#pragma once

#include <cstddef>
#include <vector>

namespace rpd {

/// Per-class distances plus their minimum. Ties go to the smallest class
/// index, so `best` is deterministic.
struct ScoreVector {
  std::vector<double> distances;
  double delta = 0.0;
  std::size_t best = 0;
  int best_label = 0;
};

} // namespace rpd
