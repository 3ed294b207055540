#pragma once

#include <vector>

#include "anchorclust/dataset.hpp"
#include "anchorclust/objective.hpp"
#include "anchorclust/state.hpp"

namespace anchorclust {

struct IterationRecord {
  int iter = 0;  // 1-based
  double objective = 0.0;
  double term_reconstruction = 0.0;
  double term_alignment = 0.0;
  double term_regularization = 0.0;
  double wall_time_ms = 0.0;
};

struct SolveResult {
  ModelState state;
  std::vector<IterationRecord> trace;
};

// Block updates. Each is the exact minimizer of its subproblem with the other
// blocks fixed, so none of them can increase the objective.

// A_v <- U_m V_m^T from the thin SVD of M_v = (X_v masked) Z_v^T, per view.
void update_anchors(ModelState& state, const MultiViewDataset& data,
                    const PresenceMask& mask, int threads = 1);

// F <- V_Q U_Q^T from the thin SVD of Q = sum_v Z_v^T P_v^T.
void update_consensus(ModelState& state);

// Column-wise simplex projection of the closed-form targets; missing columns
// are imputed from the alignment term. Throws ConfigError when a column's
// denominator degenerates (lambda = mu = 0 with the sample missing).
void update_graphs(ModelState& state, const MultiViewDataset& data,
                   const PresenceMask& mask, double lambda, double mu,
                   int threads = 1);

// P_v <- U_W V_W^T from the thin SVD of W_v = F Z_v^T, per view.
void update_alignment(ModelState& state, int threads = 1);

// gamma_v proportional to inverse masked reconstruction error (epsilon
// guarded), normalized to the simplex.
void update_weights(ModelState& state, const MultiViewDataset& data,
                    const PresenceMask& mask);

// Feasible deterministic start: uniform weights, identity alignments, uniform
// columns in every graph. Anchors come from seeded k-means (QR-orthonormalized
// centers) when learn_anchors is false, and are placeholders otherwise (the
// first update_anchors call overwrites them before use).
ModelState initial_state(const MultiViewDataset& data,
                         const PresenceMask& mask, const SolverConfig& config);

// Runs the alternating minimization: anchors, consensus, graphs, alignment,
// weights per iteration, recording the objective after each full iteration,
// until the relative objective change drops below config.tol or
// config.max_iters is reached.
SolveResult solve(const MultiViewDataset& data, const PresenceMask& mask,
                  const SolverConfig& config);

}  // namespace anchorclust
