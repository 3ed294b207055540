#pragma once

#include <Eigen/Dense>
#include <string_view>

namespace anchorclust {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using Index = Eigen::Index;

// Throws NumericalError naming `what` and the offending position if any entry
// is NaN or infinite.
void require_finite(const Mat& m, std::string_view what);
void require_finite(double x, std::string_view what);

}  // namespace anchorclust
