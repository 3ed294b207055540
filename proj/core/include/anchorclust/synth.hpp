#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "anchorclust/dataset.hpp"

namespace anchorclust {

// Recipe for a labeled multi-view Gaussian-blob dataset. Cluster means per
// view sit at the vertices of a regular simplex (a scaled random orthonormal
// frame when d_v >= k, rejection-sampled directions otherwise) with pairwise
// distance cluster_separation * noise_std (times 1.0 when noise_std == 0).
// Optional per-view permutations reassign clusters to mean slots so that
// matching structure across views requires alignment.
struct SynthSpec {
  std::string name = "synthetic";
  Index n = 0;
  Index k = 2;
  Index views = 1;
  std::vector<Index> dims;
  double cluster_separation = 4.0;
  double noise_std = 1.0;
  std::optional<std::vector<std::vector<Index>>> anchor_permutations;
  std::uint64_t seed = 0;

  // Throws ConfigError unless k >= 2, dims.size() == views, dims positive,
  // cluster_separation > 0, noise_std >= 0, n >= k, and any permutations are
  // valid permutations of [0, k).
  void validate() const;
};

struct SynthResult {
  MultiViewDataset dataset;  // labels filled with the latent cluster ids
  std::vector<Mat> means;    // per view: d_v x k, column c = mean in slot c
};

// Deterministic for a fixed seed; identity permutations produce the same
// bytes as absent permutations.
SynthResult synth_dataset(const SynthSpec& spec);

}  // namespace anchorclust
