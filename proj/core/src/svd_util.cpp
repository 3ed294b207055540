#include "anchorclust/svd_util.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <cmath>

#include "anchorclust/errors.hpp"

namespace anchorclust {

namespace {

// Flips singular-vector pairs so each left vector's largest-magnitude entry
// is positive; the first such entry wins ties.
void fix_signs(Mat& u, Mat& v) {
  for (Index c = 0; c < u.cols(); ++c) {
    Index arg = 0;
    double best = -1.0;
    for (Index i = 0; i < u.rows(); ++i) {
      const double mag = std::abs(u(i, c));
      if (mag > best) {
        best = mag;
        arg = i;
      }
    }
    if (u(arg, c) < 0.0) {
      u.col(c) = -u.col(c);
      v.col(c) = -v.col(c);
    }
  }
}

}  // namespace

ThinSvd thin_svd(const Mat& m) {
  if (!m.allFinite()) {
    throw NumericalError("SVD input contains non-finite entries");
  }
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  ThinSvd result;
  result.u = svd.matrixU();
  result.s = svd.singularValues();
  result.v = svd.matrixV();
  fix_signs(result.u, result.v);
  return result;
}

Mat polar_orthonormal(const Mat& m) {
  const ThinSvd svd = thin_svd(m);
  return svd.u * svd.v.transpose();
}

Mat orthonormalize_columns(const Mat& m) {
  Eigen::HouseholderQR<Mat> qr(m);
  Mat q = qr.householderQ() * Mat::Identity(m.rows(), m.cols());
  const Mat r = qr.matrixQR().topRows(m.cols()).triangularView<Eigen::Upper>();
  for (Index c = 0; c < q.cols(); ++c) {
    if (r(c, c) < 0.0) q.col(c) = -q.col(c);
  }
  return q;
}

}  // namespace anchorclust
