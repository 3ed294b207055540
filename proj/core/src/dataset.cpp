#include "anchorclust/dataset.hpp"

#include <algorithm>
#include <sstream>

#include "anchorclust/errors.hpp"

namespace anchorclust {

Index MultiViewDataset::num_classes() const {
  if (!labels || labels->empty()) return 0;
  return static_cast<Index>(*std::max_element(labels->begin(), labels->end())) +
         1;
}

void MultiViewDataset::validate() const {
  if (views.empty()) throw ConfigError("dataset '" + name + "' has no views");
  if (n < 1) throw ConfigError("dataset '" + name + "' has no samples");
  for (Index v = 0; v < view_count(); ++v) {
    const Mat& x = views[static_cast<std::size_t>(v)];
    if (x.cols() != n) {
      std::ostringstream msg;
      msg << "dataset '" << name << "' view " << v << " has " << x.cols()
          << " columns, expected " << n;
      throw ConfigError(msg.str());
    }
    if (x.rows() < 1) {
      std::ostringstream msg;
      msg << "dataset '" << name << "' view " << v << " has zero rows";
      throw ConfigError(msg.str());
    }
    std::ostringstream what;
    what << "dataset '" << name << "' view " << v;
    require_finite(x, what.str());
  }
  if (labels) {
    if (static_cast<Index>(labels->size()) != n) {
      std::ostringstream msg;
      msg << "dataset '" << name << "' has " << labels->size()
          << " labels, expected " << n;
      throw ConfigError(msg.str());
    }
    for (int value : *labels) {
      if (value < 0) {
        throw ConfigError("dataset '" + name + "' has a negative label");
      }
    }
  }
}

PresenceMask PresenceMask::complete(Index views, Index n) {
  PresenceMask mask;
  mask.presence = Mat::Ones(views, n);
  return mask;
}

Index PresenceMask::observed_count(Index v) const {
  return static_cast<Index>(presence.row(v).sum());
}

Index PresenceMask::missing_count() const {
  return presence.size() - static_cast<Index>(presence.sum());
}

void PresenceMask::validate() const {
  if (presence.rows() < 1 || presence.cols() < 1) {
    throw ConfigError("presence mask is empty");
  }
  for (Index v = 0; v < presence.rows(); ++v) {
    for (Index j = 0; j < presence.cols(); ++j) {
      const double e = presence(v, j);
      if (e != 0.0 && e != 1.0) {
        std::ostringstream msg;
        msg << "presence mask entry (" << v << ", " << j
            << ") is not 0/1: " << e;
        throw ConfigError(msg.str());
      }
    }
  }
  for (Index j = 0; j < presence.cols(); ++j) {
    if (presence.col(j).sum() < 1.0) {
      std::ostringstream msg;
      msg << "sample " << j << " is observed in no view";
      throw ConfigError(msg.str());
    }
  }
  for (Index v = 0; v < presence.rows(); ++v) {
    if (presence.row(v).sum() < 1.0) {
      std::ostringstream msg;
      msg << "view " << v << " has no observed samples";
      throw ConfigError(msg.str());
    }
  }
}

Vec presence_vector(const PresenceMask& mask, Index v) {
  if (v < 0 || v >= mask.view_count()) {
    std::ostringstream msg;
    msg << "view index " << v << " out of range [0, " << mask.view_count()
        << ")";
    throw ConfigError(msg.str());
  }
  return mask.presence.row(v).transpose();
}

Mat masked_view(const Mat& x, const Vec& r) {
  return x.array().rowwise() * r.transpose().array();
}

}  // namespace anchorclust
