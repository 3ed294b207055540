#include "anchorclust/simplex.hpp"

#include <algorithm>
#include <vector>

#include "anchorclust/errors.hpp"

namespace anchorclust {

namespace {

// Writes the projection of f (length m, via raw pointers) into z, reusing the
// caller's sort buffer.
void project(const double* f, double* z, Index m, std::vector<double>& sorted) {
  sorted.assign(f, f + m);
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double prefix = 0.0;
  double alpha = 0.0;
  for (Index i = 0; i < m; ++i) {
    prefix += sorted[static_cast<std::size_t>(i)];
    const double candidate = (1.0 - prefix) / static_cast<double>(i + 1);
    // Holds at i = 0 unconditionally, so alpha is always set.
    if (sorted[static_cast<std::size_t>(i)] + candidate > 0.0) {
      alpha = candidate;
    }
  }
  for (Index i = 0; i < m; ++i) {
    z[i] = std::max(f[i] + alpha, 0.0);
  }
}

}  // namespace

Vec simplex_project(const Vec& f) {
  if (!f.allFinite()) {
    throw NumericalError("simplex projection input is non-finite");
  }
  Vec z(f.size());
  std::vector<double> buffer;
  project(f.data(), z.data(), f.size(), buffer);
  return z;
}

void simplex_project_columns(Mat& f) {
  if (!f.allFinite()) {
    throw NumericalError("simplex projection input is non-finite");
  }
  std::vector<double> buffer;
  for (Index j = 0; j < f.cols(); ++j) {
    project(f.col(j).data(), f.col(j).data(), f.rows(), buffer);
  }
}

}  // namespace anchorclust
