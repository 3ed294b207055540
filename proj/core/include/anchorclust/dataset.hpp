#pragma once

#include <optional>
#include <string>
#include <vector>

#include "anchorclust/types.hpp"

namespace anchorclust {

// Per-view feature matrices over a shared sample axis; view v is d_v x n with
// one sample per column.
struct MultiViewDataset {
  std::string name;
  Index n = 0;
  std::vector<Mat> views;
  std::optional<std::vector<int>> labels;  // values in [0, k)

  Index view_count() const { return static_cast<Index>(views.size()); }
  Index dim(Index v) const { return views[static_cast<std::size_t>(v)].rows(); }

  // Number of distinct label values (max + 1); 0 when labels are absent.
  Index num_classes() const;

  // Throws ConfigError / NumericalError when shapes disagree, a view is
  // empty, entries are non-finite, or labels are malformed.
  void validate() const;
};

// Which samples are observed in which views; row v is the 0/1 presence
// vector of view v.
struct PresenceMask {
  Mat presence;  // V x n, entries in {0, 1}

  static PresenceMask complete(Index views, Index n);

  Index view_count() const { return presence.rows(); }
  Index sample_count() const { return presence.cols(); }
  bool observed(Index v, Index j) const { return presence(v, j) != 0.0; }
  Index observed_count(Index v) const;
  Index missing_count() const;
  bool any_missing() const { return missing_count() > 0; }

  // Throws ConfigError unless entries are 0/1, every sample is observed in at
  // least one view, and no view is empty.
  void validate() const;
};

// Presence indicator of view v over all samples. Throws ConfigError when v is
// out of range.
Vec presence_vector(const PresenceMask& mask, Index v);

// View v with missing columns zeroed out.
Mat masked_view(const Mat& x, const Vec& r);

}  // namespace anchorclust
