#pragma once

#include "anchorclust/dataset.hpp"
#include "anchorclust/state.hpp"
#include "anchorclust/types.hpp"

namespace anchorclust {

struct ObjectiveTerms {
  double reconstruction = 0.0;  // sum_v gamma_v^2 ||(X_v - A_v Z_v) masked||_F^2
  double alignment = 0.0;       // lambda * sum_v ||P_v Z_v - F||_F^2
  double regularization = 0.0;  // mu * sum_v ||Z_v||_F^2

  double total() const { return reconstruction + alignment + regularization; }
};

// ||X_v - A_v Z_v||_F^2 over the observed columns only (r is the 0/1
// presence vector of the view).
double masked_residual_sq(const Mat& x, const Mat& a, const Mat& z,
                          const Vec& r);

// Evaluates the full objective. Throws ConfigError on shape mismatch and
// NumericalError when an intermediate value is non-finite.
ObjectiveTerms objective_terms(const ModelState& state,
                               const MultiViewDataset& data,
                               const PresenceMask& mask, double lambda,
                               double mu);

double objective(const ModelState& state, const MultiViewDataset& data,
                 const PresenceMask& mask, double lambda, double mu);

}  // namespace anchorclust
