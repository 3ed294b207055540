#include "anchorclust/embedding.hpp"

#include <sstream>

#include "anchorclust/errors.hpp"
#include "anchorclust/kmeans.hpp"
#include "anchorclust/svd_util.hpp"

namespace anchorclust {

Embedding embed_samples(const Mat& consensus, Index k) {
  if (k < 1) throw ConfigError("embedding needs k >= 1");
  if (k > consensus.rows()) {
    std::ostringstream msg;
    msg << "embedding dimension k=" << k << " exceeds the anchor count "
        << consensus.rows();
    throw ConfigError(msg.str());
  }
  const ThinSvd svd = thin_svd(consensus);
  Embedding embedding;
  embedding.k = k;
  embedding.points = svd.v.leftCols(k);
  return embedding;
}

Embedding embed_state(const ModelState& state, Index k) {
  if (state.consensus_basis.size() == 0) {
    return embed_samples(state.consensus, k);
  }
  if (k < 1 || k > state.consensus_basis.cols()) {
    std::ostringstream msg;
    msg << "embedding dimension k=" << k << " exceeds the anchor count "
        << state.consensus_basis.cols();
    throw ConfigError(msg.str());
  }
  Embedding embedding;
  embedding.k = k;
  embedding.points = state.consensus_basis.leftCols(k);
  return embedding;
}

std::vector<int> cluster(const ModelState& state, const SolverConfig& config) {
  Embedding embedding = embed_state(state, config.k);
  Mat points = std::move(embedding.points);
  if (config.renormalize_embedding) {
    for (Index i = 0; i < points.rows(); ++i) {
      const double norm = points.row(i).norm();
      if (norm > 0.0) points.row(i) /= norm;
    }
  }
  const KMeansResult run = kmeans(points, config.k, config.seed,
                                  config.kmeans_restarts, config.threads);
  return run.labels;
}

}  // namespace anchorclust
