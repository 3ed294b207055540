#include "anchorclust/types.hpp"

#include <cmath>
#include <sstream>

#include "anchorclust/errors.hpp"

namespace anchorclust {

void require_finite(const Mat& m, std::string_view what) {
  if (m.allFinite()) return;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j))) {
        std::ostringstream msg;
        msg << what << " has a non-finite entry at (" << i << ", " << j << ")";
        throw NumericalError(msg.str());
      }
    }
  }
}

void require_finite(double x, std::string_view what) {
  if (std::isfinite(x)) return;
  std::ostringstream msg;
  msg << what << " is non-finite";
  throw NumericalError(msg.str());
}

}  // namespace anchorclust
