#pragma once

#include "anchorclust/types.hpp"

namespace anchorclust {

// Euclidean projection of f onto {z >= 0, 1^T z = 1}: z = max(f + alpha, 0)
// with alpha the unique root of sum_i max(f_i + alpha, 0) = 1, found exactly
// by the sort-based algorithm.
Vec simplex_project(const Vec& f);

// Projects every column of f in place.
void simplex_project_columns(Mat& f);

}  // namespace anchorclust
