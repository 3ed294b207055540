#include "anchorclust/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "anchorclust/errors.hpp"
#include "anchorclust/kmeans.hpp"
#include "anchorclust/parallel.hpp"
#include "anchorclust/simplex.hpp"
#include "anchorclust/svd_util.hpp"

namespace anchorclust {

namespace {

constexpr double kWeightEpsilon = 1e-12;

void check_problem(const MultiViewDataset& data, const PresenceMask& mask,
                   const SolverConfig& config) {
  config.validate();
  data.validate();
  mask.validate();
  if (mask.view_count() != data.view_count() ||
      mask.sample_count() != data.n) {
    throw ConfigError("presence mask shape does not match the dataset");
  }
  Index min_dim = std::numeric_limits<Index>::max();
  for (Index v = 0; v < data.view_count(); ++v) {
    min_dim = std::min(min_dim, data.dim(v));
  }
  if (config.m > min_dim || config.m > data.n) {
    std::ostringstream msg;
    msg << "anchor count m=" << config.m
        << " must not exceed the smallest view dimension (" << min_dim
        << ") or the sample count (" << data.n << ")";
    throw ConfigError(msg.str());
  }
}

// Anchors from k-means++ seeding on the observed columns,
// QR-orthonormalized.
Mat kmeans_anchors(const Mat& x, const Vec& r, Index m, std::uint64_t seed,
                   Index view) {
  const Index observed = static_cast<Index>(r.sum());
  if (observed < m) {
    std::ostringstream msg;
    msg << "view " << view << " has " << observed
        << " observed samples, fewer than m=" << m;
    throw ConfigError(msg.str());
  }
  Mat points(observed, x.rows());
  Index row = 0;
  for (Index j = 0; j < x.cols(); ++j) {
    if (r[j] != 0.0) points.row(row++) = x.col(j).transpose();
  }
  const Mat centers = kmeans_plus_plus_centers(points, m, seed);
  return orthonormalize_columns(centers.transpose());
}

}  // namespace

void update_anchors(ModelState& state, const MultiViewDataset& data,
                    const PresenceMask& mask, int threads) {
  parallel_for(0, static_cast<std::size_t>(data.view_count()), threads,
               [&](std::size_t v) {
                 const Vec r = presence_vector(mask, static_cast<Index>(v));
                 const Mat m =
                     masked_view(data.views[v], r) * state.graphs[v].transpose();
                 state.anchors[v] = polar_orthonormal(m);
               });
}

void update_consensus(ModelState& state) {
  const Index n = state.sample_count();
  const Index m = state.anchor_count();
  Mat q = Mat::Zero(n, m);
  for (Index v = 0; v < state.view_count(); ++v) {
    const auto vi = static_cast<std::size_t>(v);
    q.noalias() +=
        state.graphs[vi].transpose() * state.alignments[vi].transpose();
  }
  const ThinSvd svd = thin_svd(q);
  state.consensus = svd.v * svd.u.transpose();
  state.consensus_basis = svd.u;
}

void update_graphs(ModelState& state, const MultiViewDataset& data,
                   const PresenceMask& mask, double lambda, double mu,
                   int threads) {
  parallel_for(
      0, static_cast<std::size_t>(data.view_count()), threads,
      [&](std::size_t v) {
        const double gamma2 =
            state.weights[static_cast<Index>(v)] *
            state.weights[static_cast<Index>(v)];
        const Vec r = presence_vector(mask, static_cast<Index>(v));
        Mat target = gamma2 * (state.anchors[v].transpose() *
                               masked_view(data.views[v], r));
        target.noalias() +=
            lambda * (state.alignments[v].transpose() * state.consensus);
        for (Index j = 0; j < target.cols(); ++j) {
          const double denominator = gamma2 * r[j] + lambda + mu;
          if (denominator <= 0.0) {
            std::ostringstream msg;
            msg << "graph column (view " << v << ", sample " << j
                << ") is undetermined: gamma^2 r_j + lambda + mu = 0";
            throw ConfigError(msg.str());
          }
          target.col(j) /= denominator;
        }
        simplex_project_columns(target);
        state.graphs[v] = std::move(target);
      });
}

void update_alignment(ModelState& state, int threads) {
  parallel_for(0, static_cast<std::size_t>(state.view_count()), threads,
               [&](std::size_t v) {
                 const Mat w = state.consensus * state.graphs[v].transpose();
                 state.alignments[v] = polar_orthonormal(w);
               });
}

void update_weights(ModelState& state, const MultiViewDataset& data,
                    const PresenceMask& mask) {
  const Index views = data.view_count();
  Vec inverse(views);
  for (Index v = 0; v < views; ++v) {
    const auto vi = static_cast<std::size_t>(v);
    const Vec r = presence_vector(mask, v);
    const double tau =
        masked_residual_sq(data.views[vi], state.anchors[vi], state.graphs[vi],
                           r);
    inverse[v] = 1.0 / (tau + kWeightEpsilon);
  }
  state.weights = inverse / inverse.sum();
}

ModelState initial_state(const MultiViewDataset& data,
                         const PresenceMask& mask,
                         const SolverConfig& config) {
  check_problem(data, mask, config);
  const Index views = data.view_count();
  const Index m = config.m;
  const Index n = data.n;

  ModelState state;
  state.weights = Vec::Constant(views, 1.0 / static_cast<double>(views));
  state.consensus = Mat::Zero(m, n);
  state.consensus.leftCols(m) = Mat::Identity(m, m);
  for (Index v = 0; v < views; ++v) {
    state.alignments.push_back(Mat::Identity(m, m));
    state.graphs.push_back(
        Mat::Constant(m, n, 1.0 / static_cast<double>(m)));
    if (config.learn_anchors) {
      // Feasible placeholder; the first anchor update overwrites it.
      Mat a = Mat::Zero(data.dim(v), m);
      a.topRows(m) = Mat::Identity(m, m);
      state.anchors.push_back(std::move(a));
    } else {
      const Vec r = presence_vector(mask, v);
      state.anchors.push_back(
          kmeans_anchors(data.views[static_cast<std::size_t>(v)], r, m,
                         config.seed + static_cast<std::uint64_t>(v), v));
    }
  }
  return state;
}

SolveResult solve(const MultiViewDataset& data, const PresenceMask& mask,
                  const SolverConfig& config) {
  if (config.lambda == 0.0 && config.mu == 0.0 && mask.any_missing()) {
    throw ConfigError(
        "lambda = mu = 0 leaves the graph columns of missing samples "
        "undetermined; set lambda or mu positive");
  }

  SolveResult result;
  result.state = initial_state(data, mask, config);
  ModelState& state = result.state;

  double previous = 0.0;
  for (int iter = 1; iter <= config.max_iters; ++iter) {
    const auto start = std::chrono::steady_clock::now();
    if (config.learn_anchors) {
      update_anchors(state, data, mask, config.threads);
    }
    update_consensus(state);
    update_graphs(state, data, mask, config.lambda, config.mu, config.threads);
    if (config.align_enabled) {
      update_alignment(state, config.threads);
    }
    update_weights(state, data, mask);

    ObjectiveTerms terms;
    try {
      terms = objective_terms(state, data, mask, config.lambda, config.mu);
    } catch (const NumericalError& e) {
      std::ostringstream msg;
      msg << e.what() << " (iteration " << iter << ")";
      throw NumericalError(msg.str());
    }
    const auto stop = std::chrono::steady_clock::now();
    const double ms =
        std::chrono::duration<double, std::milli>(stop - start).count();

    IterationRecord record;
    record.iter = iter;
    record.objective = terms.total();
    record.term_reconstruction = terms.reconstruction;
    record.term_alignment = terms.alignment;
    record.term_regularization = terms.regularization;
    record.wall_time_ms = ms;
    result.trace.push_back(record);

    if (iter > 1) {
      const double denom =
          std::max(std::abs(previous), std::numeric_limits<double>::min());
      if (std::abs(previous - record.objective) / denom < config.tol) break;
    }
    previous = record.objective;
  }
  return result;
}

}  // namespace anchorclust
