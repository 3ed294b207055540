#include "anchorclust/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "anchorclust/errors.hpp"
#include "anchorclust/parallel.hpp"
#include "anchorclust/rng.hpp"

namespace anchorclust {

namespace {

// D^2-weighted seeding; falls back to a uniform draw when all remaining
// distances are zero.
Mat seed_centers(const Mat& points, Index k, Rng& rng) {
  const Index n = points.rows();
  Mat centers(k, points.cols());
  centers.row(0) = points.row(static_cast<Index>(rng.next_index(
      static_cast<std::uint64_t>(n))));
  Vec d2(n);
  for (Index i = 0; i < n; ++i) {
    d2[i] = (points.row(i) - centers.row(0)).squaredNorm();
  }
  for (Index c = 1; c < k; ++c) {
    const double total = d2.sum();
    Index chosen = n - 1;
    if (total > 0.0) {
      const double r = rng.next_double() * total;
      double cumulative = 0.0;
      for (Index i = 0; i < n; ++i) {
        cumulative += d2[i];
        if (cumulative > r) {
          chosen = i;
          break;
        }
      }
    } else {
      chosen = static_cast<Index>(rng.next_index(
          static_cast<std::uint64_t>(n)));
    }
    centers.row(c) = points.row(chosen);
    for (Index i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], (points.row(i) - centers.row(c)).squaredNorm());
    }
  }
  return centers;
}

}  // namespace

Mat kmeans_plus_plus_centers(const Mat& points, Index k, std::uint64_t seed) {
  if (points.rows() < k) throw ConfigError("k-means++ needs at least k points");
  Rng rng(seed);
  return seed_centers(points, k, rng);
}

KMeansResult kmeans_single(const Mat& points, Index k, std::uint64_t seed,
                           int max_iters,
                           std::vector<double>* inertia_history) {
  const Index n = points.rows();
  if (n < k) throw ConfigError("k-means needs at least k points");
  if (k < 1) throw ConfigError("k-means needs k >= 1");

  Rng rng(seed);
  KMeansResult result;
  result.centers = seed_centers(points, k, rng);
  result.labels.assign(static_cast<std::size_t>(n), -1);

  std::vector<int> previous;
  double inertia = 0.0;
  int iter = 0;
  while (iter < max_iters) {
    ++iter;
    previous = result.labels;
    inertia = 0.0;
    for (Index i = 0; i < n; ++i) {
      Index best = 0;
      double best_d2 = (points.row(i) - result.centers.row(0)).squaredNorm();
      for (Index c = 1; c < k; ++c) {
        const double d2 =
            (points.row(i) - result.centers.row(c)).squaredNorm();
        if (d2 < best_d2) {
          best_d2 = d2;
          best = c;
        }
      }
      result.labels[static_cast<std::size_t>(i)] = static_cast<int>(best);
      inertia += best_d2;
    }
    if (inertia_history) inertia_history->push_back(inertia);
    if (result.labels == previous) break;

    Mat sums = Mat::Zero(k, points.cols());
    std::vector<Index> counts(static_cast<std::size_t>(k), 0);
    for (Index i = 0; i < n; ++i) {
      const auto c = static_cast<Index>(result.labels[static_cast<std::size_t>(i)]);
      sums.row(c) += points.row(i);
      ++counts[static_cast<std::size_t>(c)];
    }
    for (Index c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) {
        result.centers.row(c) =
            sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
      }
    }
    // Empty clusters steal the point farthest from its assigned center.
    std::vector<char> stolen(static_cast<std::size_t>(n), 0);
    for (Index c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) continue;
      Index farthest = -1;
      double far_d2 = -1.0;
      for (Index i = 0; i < n; ++i) {
        if (stolen[static_cast<std::size_t>(i)]) continue;
        const auto a =
            static_cast<Index>(result.labels[static_cast<std::size_t>(i)]);
        const double d2 = (points.row(i) - result.centers.row(a)).squaredNorm();
        if (d2 > far_d2) {
          far_d2 = d2;
          farthest = i;
        }
      }
      result.centers.row(c) = points.row(farthest);
      result.labels[static_cast<std::size_t>(farthest)] = static_cast<int>(c);
      stolen[static_cast<std::size_t>(farthest)] = 1;
      ++result.repairs;
    }
  }

  // Inertia consistent with the final centers and assignment.
  inertia = 0.0;
  for (Index i = 0; i < n; ++i) {
    const auto c = static_cast<Index>(result.labels[static_cast<std::size_t>(i)]);
    inertia += (points.row(i) - result.centers.row(c)).squaredNorm();
  }
  result.inertia = inertia;
  result.iterations = iter;
  return result;
}

KMeansResult kmeans(const Mat& points, Index k, std::uint64_t seed,
                    int restarts, int threads, int max_iters) {
  if (restarts < 1) throw ConfigError("k-means needs at least one restart");
  std::vector<KMeansResult> runs(static_cast<std::size_t>(restarts));
  parallel_for(0, static_cast<std::size_t>(restarts), threads,
               [&](std::size_t r) {
                 runs[r] = kmeans_single(
                     points, k, seed + static_cast<std::uint64_t>(r),
                     max_iters);
               });
  std::size_t best = 0;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].inertia < runs[best].inertia) best = r;
  }
  runs[best].best_restart = static_cast<int>(best);
  return runs[best];
}

}  // namespace anchorclust
