#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "anchorclust/dataset.hpp"
#include "anchorclust/types.hpp"

namespace anchorclust {

// Default feasibility tolerances.
inline constexpr double kOrthTol = 1e-8;
inline constexpr double kSimplexNegTol = 1e-12;
inline constexpr double kSimplexSumTol = 1e-9;
inline constexpr double kWeightSumTol = 1e-12;

struct SolverConfig {
  Index m = 0;            // anchor count
  Index k = 2;            // cluster count
  double lambda = 1.0;    // alignment trade-off
  double mu = 0.0;        // graph regularization
  int max_iters = 50;
  double tol = 1e-6;      // relative objective-change threshold
  std::uint64_t seed = 0;
  bool align_enabled = true;    // false: alignment matrices frozen at identity
  bool learn_anchors = true;    // false: anchors fixed at k-means init
  int kmeans_restarts = 10;
  bool renormalize_embedding = false;  // row-normalize embedding before k-means
  int threads = 1;

  // Feasibility tolerances; tests may override.
  double orth_tol = kOrthTol;
  double simplex_neg_tol = kSimplexNegTol;
  double simplex_sum_tol = kSimplexSumTol;
  double weight_sum_tol = kWeightSumTol;

  // Throws ConfigError unless m >= k >= 2, max_iters >= 1, tol > 0,
  // lambda >= 0, mu >= 0, restarts >= 1.
  void validate() const;
};

// All variables of the alternating minimization.
struct ModelState {
  std::vector<Mat> anchors;     // A_v: d_v x m, orthonormal columns
  std::vector<Mat> graphs;      // Z_v: m x n, each column on the simplex
  std::vector<Mat> alignments;  // P_v: m x m, orthogonal
  Mat consensus;                // F: m x n, orthonormal rows
  // Sample-side singular vectors (n x m) of the matrix whose SVD produced F,
  // ordered by its singular values. Every singular value of F itself is 1, so
  // this factor carries the only meaningful ordering for the embedding.
  Mat consensus_basis;
  Vec weights;                  // length V, nonnegative, sums to 1

  Index view_count() const { return static_cast<Index>(graphs.size()); }
  Index anchor_count() const { return consensus.rows(); }
  Index sample_count() const { return consensus.cols(); }
};

// Constraint defects, each the worst violation over the state.
double orthonormal_columns_defect(const Mat& a);  // max |A^T A - I|
double orthonormal_rows_defect(const Mat& f);     // max |F F^T - I|
double simplex_negativity(const Mat& z);          // max(0, -min entry)
double simplex_sum_defect(const Mat& z);          // max_j |1^T z_j - 1|
double weight_negativity(const Vec& w);
double weight_sum_defect(const Vec& w);

struct StateCheck {
  double anchor_orth = 0.0;
  double alignment_orth = 0.0;
  double consensus_orth = 0.0;
  double graph_negativity = 0.0;
  double graph_sum = 0.0;
  double weight_negativity = 0.0;
  double weight_sum = 0.0;

  bool ok(const SolverConfig& config) const;
};

StateCheck check_state(const ModelState& state);

// Throws NumericalError describing every violated constraint.
void require_feasible(const ModelState& state, const SolverConfig& config,
                      const std::string& context);

}  // namespace anchorclust
