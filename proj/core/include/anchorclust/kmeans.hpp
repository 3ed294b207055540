#pragma once

#include <cstdint>
#include <vector>

#include "anchorclust/types.hpp"

namespace anchorclust {

struct KMeansResult {
  std::vector<int> labels;  // cluster id per point
  Mat centers;              // k x d
  double inertia = 0.0;     // within-cluster sum of squared distances
  int iterations = 0;
  int best_restart = 0;
  int repairs = 0;  // empty-cluster repairs performed
};

// k-means++ seeding alone: k rows of `points` chosen by D^2 weighting.
Mat kmeans_plus_plus_centers(const Mat& points, Index k, std::uint64_t seed);

// One seeded k-means++ / Lloyd run on row-per-point data. Converges when
// assignments are stable or after max_iters sweeps; an empty cluster steals
// the point farthest from its current center. If inertia_history is given it
// receives the inertia after every assignment sweep.
KMeansResult kmeans_single(const Mat& points, Index k, std::uint64_t seed,
                           int max_iters = 300,
                           std::vector<double>* inertia_history = nullptr);

// `restarts` independent runs with seeds seed+0 .. seed+restarts-1; returns
// the lowest-inertia run (ties: lowest restart index). Restarts may execute
// concurrently; the selection is order-independent.
KMeansResult kmeans(const Mat& points, Index k, std::uint64_t seed,
                    int restarts, int threads = 1, int max_iters = 300);

}  // namespace anchorclust
