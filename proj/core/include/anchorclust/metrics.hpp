#pragma once

#include <vector>

#include "anchorclust/types.hpp"

namespace anchorclust {

// Cross-tabulation of two labelings over the same samples. Labels may be any
// integers; they are recoded to contiguous ids in order of first appearance
// of their sorted values.
struct ContingencyTable {
  Eigen::MatrixXd counts;  // k_pred x k_true
  Index n = 0;

  static ContingencyTable from_labels(const std::vector<int>& pred,
                                      const std::vector<int>& truth);
};

// Maximum-total-weight assignment of rows to columns of a square matrix;
// returns the column index chosen for each row.
std::vector<Index> hungarian(const Mat& weight);

// Best-matching fraction of agreeing samples (Hungarian over the zero-padded
// contingency table).
double accuracy(const std::vector<int>& pred, const std::vector<int>& truth);

// I(pred; truth) / sqrt(H(pred) H(truth)), natural log, 0 log 0 = 0. Both
// partitions trivial: 1; exactly one trivial: 0.
double nmi(const std::vector<int>& pred, const std::vector<int>& truth);

// Mean over predicted clusters of their largest true-class overlap.
double purity(const std::vector<int>& pred, const std::vector<int>& truth);

// Pairwise F1 over all sample pairs; 0 when precision + recall is 0.
double fscore(const std::vector<int>& pred, const std::vector<int>& truth);

}  // namespace anchorclust
