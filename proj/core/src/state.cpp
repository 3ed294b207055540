#include "anchorclust/state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "anchorclust/errors.hpp"

namespace anchorclust {

void SolverConfig::validate() const {
  if (k < 2) throw ConfigError("cluster count k must be at least 2");
  if (m < k) throw ConfigError("anchor count m must be at least k");
  if (max_iters < 1) throw ConfigError("max_iters must be at least 1");
  if (!(tol > 0.0)) throw ConfigError("tol must be positive");
  if (lambda < 0.0) throw ConfigError("lambda must be nonnegative");
  if (mu < 0.0) throw ConfigError("mu must be nonnegative");
  if (kmeans_restarts < 1) throw ConfigError("kmeans_restarts must be >= 1");
}

double orthonormal_columns_defect(const Mat& a) {
  const Mat gram = a.transpose() * a;
  return (gram - Mat::Identity(a.cols(), a.cols())).cwiseAbs().maxCoeff();
}

double orthonormal_rows_defect(const Mat& f) {
  const Mat gram = f * f.transpose();
  return (gram - Mat::Identity(f.rows(), f.rows())).cwiseAbs().maxCoeff();
}

double simplex_negativity(const Mat& z) {
  return std::max(0.0, -z.minCoeff());
}

double simplex_sum_defect(const Mat& z) {
  return (z.colwise().sum().array() - 1.0).abs().maxCoeff();
}

double weight_negativity(const Vec& w) { return std::max(0.0, -w.minCoeff()); }

double weight_sum_defect(const Vec& w) { return std::abs(w.sum() - 1.0); }

bool StateCheck::ok(const SolverConfig& config) const {
  return anchor_orth <= config.orth_tol && alignment_orth <= config.orth_tol &&
         consensus_orth <= config.orth_tol &&
         graph_negativity <= config.simplex_neg_tol &&
         graph_sum <= config.simplex_sum_tol &&
         weight_negativity <= 0.0 && weight_sum <= config.weight_sum_tol;
}

StateCheck check_state(const ModelState& state) {
  StateCheck check;
  for (const Mat& a : state.anchors) {
    check.anchor_orth = std::max(check.anchor_orth,
                                 orthonormal_columns_defect(a));
  }
  for (const Mat& p : state.alignments) {
    check.alignment_orth = std::max(check.alignment_orth,
                                    orthonormal_columns_defect(p));
  }
  check.consensus_orth = orthonormal_rows_defect(state.consensus);
  for (const Mat& z : state.graphs) {
    check.graph_negativity = std::max(check.graph_negativity,
                                      simplex_negativity(z));
    check.graph_sum = std::max(check.graph_sum, simplex_sum_defect(z));
  }
  check.weight_negativity = weight_negativity(state.weights);
  check.weight_sum = weight_sum_defect(state.weights);
  return check;
}

void require_feasible(const ModelState& state, const SolverConfig& config,
                      const std::string& context) {
  const StateCheck check = check_state(state);
  if (check.ok(config)) return;
  std::ostringstream msg;
  msg << "infeasible model state (" << context << "):";
  if (check.anchor_orth > config.orth_tol)
    msg << " anchor orthonormality defect " << check.anchor_orth << ";";
  if (check.alignment_orth > config.orth_tol)
    msg << " alignment orthogonality defect " << check.alignment_orth << ";";
  if (check.consensus_orth > config.orth_tol)
    msg << " consensus row-orthonormality defect " << check.consensus_orth
        << ";";
  if (check.graph_negativity > config.simplex_neg_tol)
    msg << " graph negativity " << check.graph_negativity << ";";
  if (check.graph_sum > config.simplex_sum_tol)
    msg << " graph column-sum defect " << check.graph_sum << ";";
  if (check.weight_negativity > 0.0)
    msg << " negative view weight " << check.weight_negativity << ";";
  if (check.weight_sum > config.weight_sum_tol)
    msg << " weight sum defect " << check.weight_sum << ";";
  throw NumericalError(msg.str());
}

}  // namespace anchorclust
