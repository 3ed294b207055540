#pragma once

#include "anchorclust/types.hpp"

namespace anchorclust {

// Thin SVD m = u * s.asDiagonal() * v^T with min(rows, cols) columns in each
// factor. Signs are fixed so each left singular vector's largest-magnitude
// entry is positive (lowest index wins ties); v columns are flipped in step.
// Zero singular values leave orthonormal basis completions in place.
struct ThinSvd {
  Mat u;
  Vec s;
  Mat v;
};

ThinSvd thin_svd(const Mat& m);

// U V^T of the thin SVD: the semi-orthogonal maximizer of Tr(A^T M) over
// A^T A = I (rows >= cols).
Mat polar_orthonormal(const Mat& m);

// Thin-QR orthonormal basis for the column span, with the sign of each
// column fixed so the corresponding diagonal of R is nonnegative.
Mat orthonormalize_columns(const Mat& m);

}  // namespace anchorclust
