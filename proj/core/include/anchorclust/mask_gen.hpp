#pragma once

#include <cstdint>

#include "anchorclust/dataset.hpp"

namespace anchorclust {

// Removes exactly floor(ratio * n * views) (view, sample) cells from a
// complete mask while keeping every sample observed in at least one view.
// All cells are visited in a seeded shuffled order and removed greedily,
// skipping any removal that would orphan a sample. Deterministic for a fixed
// seed. Throws ConfigError when ratio is outside [0, (V-1)/V] or the quota
// cannot be met.
PresenceMask generate_mask(Index n, Index views, double ratio,
                           std::uint64_t seed);

}  // namespace anchorclust
