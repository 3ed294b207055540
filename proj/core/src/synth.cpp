#include "anchorclust/synth.hpp"

#include <cmath>
#include <map>
#include <limits>
#include <sstream>
#include <vector>

#include "anchorclust/errors.hpp"
#include "anchorclust/rng.hpp"
#include "anchorclust/svd_util.hpp"

namespace anchorclust {

namespace {

double min_pairwise_distance(const Mat& points) {
  double best = std::numeric_limits<double>::infinity();
  for (Index a = 0; a < points.cols(); ++a) {
    for (Index b = a + 1; b < points.cols(); ++b) {
      best = std::min(best, (points.col(a) - points.col(b)).norm());
    }
  }
  return best;
}

// k cluster means in dimension d with pairwise distance >= target. A scaled
// orthonormal frame gives a regular simplex when d >= k; otherwise scaled
// gaussian directions.
Mat make_means(Index d, Index k, double target, Rng& rng) {
  if (d >= k) {
    const Mat frame = orthonormalize_columns(rng.gaussian_matrix(d, k));
    return frame * (target / std::sqrt(2.0));
  }
  for (int attempt = 0; attempt < 100; ++attempt) {
    const Mat g = rng.gaussian_matrix(d, k);
    const double spread = min_pairwise_distance(g);
    if (spread > 0.0) {
      return g * (target / spread);
    }
  }
  std::ostringstream msg;
  msg << "cannot place " << k << " separated cluster means in dimension " << d;
  throw ConfigError(msg.str());
}

}  // namespace

void SynthSpec::validate() const {
  if (k < 2) throw ConfigError("synth spec needs k >= 2");
  if (views < 1) throw ConfigError("synth spec needs at least one view");
  if (static_cast<Index>(dims.size()) != views) {
    throw ConfigError("synth spec dims list does not match the view count");
  }
  for (Index d : dims) {
    if (d < 1) throw ConfigError("synth spec has a non-positive dimension");
  }
  if (!(cluster_separation > 0.0)) {
    throw ConfigError("cluster_separation must be positive");
  }
  if (noise_std < 0.0) throw ConfigError("noise_std must be nonnegative");
  if (n < k) throw ConfigError("synth spec needs n >= k");
  if (anchor_permutations) {
    if (static_cast<Index>(anchor_permutations->size()) != views) {
      throw ConfigError("anchor_permutations must list one permutation per view");
    }
    for (const auto& perm : *anchor_permutations) {
      if (static_cast<Index>(perm.size()) != k) {
        throw ConfigError("each anchor permutation must have length k");
      }
      std::vector<bool> seen(static_cast<std::size_t>(k), false);
      for (Index p : perm) {
        if (p < 0 || p >= k || seen[static_cast<std::size_t>(p)]) {
          throw ConfigError("anchor permutation is not a permutation of [0, k)");
        }
        seen[static_cast<std::size_t>(p)] = true;
      }
    }
  }
}

SynthResult synth_dataset(const SynthSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);

  // Balanced cluster sizes (within one), shuffled assignment order.
  std::vector<int> labels(static_cast<std::size_t>(spec.n));
  for (Index i = 0; i < spec.n; ++i) {
    labels[static_cast<std::size_t>(i)] = static_cast<int>(i % spec.k);
  }
  rng.shuffle(labels);

  const double unit = spec.noise_std > 0.0 ? spec.noise_std : 1.0;
  const double target = spec.cluster_separation * unit;

  // Views of equal dimensionality share one mean frame, so mean slots
  // correspond across such views and anchor_permutations genuinely scramble
  // the correspondence; frames are drawn on first use of each dimension.
  std::map<Index, Mat> frame_by_dim;

  SynthResult result;
  result.dataset.name = spec.name;
  result.dataset.n = spec.n;
  for (Index v = 0; v < spec.views; ++v) {
    const Index d = spec.dims[static_cast<std::size_t>(v)];
    auto found = frame_by_dim.find(d);
    if (found == frame_by_dim.end()) {
      found = frame_by_dim.emplace(d, make_means(d, spec.k, target, rng)).first;
    }
    Mat means = found->second;
    Mat x(d, spec.n);
    for (Index i = 0; i < spec.n; ++i) {
      Index slot = labels[static_cast<std::size_t>(i)];
      if (spec.anchor_permutations) {
        slot = (*spec.anchor_permutations)[static_cast<std::size_t>(v)]
                                          [static_cast<std::size_t>(slot)];
      }
      x.col(i) = means.col(slot);
      for (Index row = 0; row < d; ++row) {
        x(row, i) += spec.noise_std * rng.next_gaussian();
      }
    }
    result.dataset.views.push_back(std::move(x));
    result.means.push_back(std::move(means));
  }
  result.dataset.labels = std::move(labels);
  result.dataset.validate();
  return result;
}

}  // namespace anchorclust
