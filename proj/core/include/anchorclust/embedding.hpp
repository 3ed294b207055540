#pragma once

#include <vector>

#include "anchorclust/state.hpp"
#include "anchorclust/types.hpp"

namespace anchorclust {

struct Embedding {
  Mat points;  // n x k, row per sample
  Index k = 0;
};

// Top-k sample-side (right) singular vectors of the m x n consensus matrix.
// Throws ConfigError when k > m.
Embedding embed_samples(const Mat& consensus, Index k);

// Embedding of a solver state. All singular values of the consensus equal 1,
// so the state's stored sample-side factor supplies the ordering; a state
// without one falls back to a fresh SVD of the consensus.
Embedding embed_state(const ModelState& state, Index k);

// embed_state followed by seeded k-means; labels of length n.
std::vector<int> cluster(const ModelState& state, const SolverConfig& config);

}  // namespace anchorclust
