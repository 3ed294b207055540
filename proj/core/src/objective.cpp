#include "anchorclust/objective.hpp"

#include <sstream>

#include "anchorclust/errors.hpp"

namespace anchorclust {

namespace {

void check_shapes(const ModelState& state, const MultiViewDataset& data,
                  const PresenceMask& mask) {
  const Index views = data.view_count();
  if (state.view_count() != views || mask.view_count() != views) {
    std::ostringstream msg;
    msg << "view count mismatch: data " << views << ", state "
        << state.view_count() << ", mask " << mask.view_count();
    throw ConfigError(msg.str());
  }
  if (mask.sample_count() != data.n || state.sample_count() != data.n) {
    std::ostringstream msg;
    msg << "sample count mismatch: data " << data.n << ", state "
        << state.sample_count() << ", mask " << mask.sample_count();
    throw ConfigError(msg.str());
  }
  const Index m = state.anchor_count();
  if (static_cast<Index>(state.anchors.size()) != views ||
      static_cast<Index>(state.alignments.size()) != views) {
    throw ConfigError("state has the wrong number of per-view matrices");
  }
  if (state.weights.size() != views) {
    throw ConfigError("weight vector length does not match the view count");
  }
  for (Index v = 0; v < views; ++v) {
    const auto vi = static_cast<std::size_t>(v);
    if (state.anchors[vi].rows() != data.dim(v) ||
        state.anchors[vi].cols() != m ||
        state.graphs[vi].rows() != m || state.graphs[vi].cols() != data.n ||
        state.alignments[vi].rows() != m || state.alignments[vi].cols() != m) {
      std::ostringstream msg;
      msg << "shape mismatch in view " << v;
      throw ConfigError(msg.str());
    }
  }
}

}  // namespace

double masked_residual_sq(const Mat& x, const Mat& a, const Mat& z,
                          const Vec& r) {
  const Mat reconstruction = a * z;
  double total = 0.0;
  for (Index j = 0; j < x.cols(); ++j) {
    if (r[j] != 0.0) {
      total += (x.col(j) - reconstruction.col(j)).squaredNorm();
    }
  }
  return total;
}

ObjectiveTerms objective_terms(const ModelState& state,
                               const MultiViewDataset& data,
                               const PresenceMask& mask, double lambda,
                               double mu) {
  check_shapes(state, data, mask);
  ObjectiveTerms terms;
  for (Index v = 0; v < data.view_count(); ++v) {
    const auto vi = static_cast<std::size_t>(v);
    const double gamma = state.weights[v];
    const Vec r = presence_vector(mask, v);
    terms.reconstruction +=
        gamma * gamma *
        masked_residual_sq(data.views[vi], state.anchors[vi], state.graphs[vi],
                           r);
    terms.alignment +=
        lambda *
        (state.alignments[vi] * state.graphs[vi] - state.consensus)
            .squaredNorm();
    terms.regularization += mu * state.graphs[vi].squaredNorm();
  }
  require_finite(terms.reconstruction, "reconstruction term");
  require_finite(terms.alignment, "alignment term");
  require_finite(terms.regularization, "regularization term");
  return terms;
}

double objective(const ModelState& state, const MultiViewDataset& data,
                 const PresenceMask& mask, double lambda, double mu) {
  return objective_terms(state, data, mask, lambda, mu).total();
}

}  // namespace anchorclust
