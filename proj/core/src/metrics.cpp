#include "anchorclust/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "anchorclust/errors.hpp"

namespace anchorclust {

namespace {

std::vector<int> recode(const std::vector<int>& labels) {
  std::vector<int> values(labels);
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::map<int, int> ids;
  for (std::size_t i = 0; i < values.size(); ++i) {
    ids[values[i]] = static_cast<int>(i);
  }
  std::vector<int> out;
  out.reserve(labels.size());
  for (int value : labels) out.push_back(ids[value]);
  return out;
}

void check_pair(const std::vector<int>& pred, const std::vector<int>& truth) {
  if (pred.empty()) throw ConfigError("metrics need at least one sample");
  if (pred.size() != truth.size()) {
    throw ConfigError("label vectors have different lengths");
  }
}

double entropy(const Vec& counts, double n) {
  double h = 0.0;
  for (Index i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0.0) {
      const double p = counts[i] / n;
      h -= p * std::log(p);
    }
  }
  return h;
}

double pair_count(double c) { return c * (c - 1.0) / 2.0; }

}  // namespace

ContingencyTable ContingencyTable::from_labels(const std::vector<int>& pred,
                                               const std::vector<int>& truth) {
  check_pair(pred, truth);
  const std::vector<int> p = recode(pred);
  const std::vector<int> t = recode(truth);
  const int kp = *std::max_element(p.begin(), p.end()) + 1;
  const int kt = *std::max_element(t.begin(), t.end()) + 1;
  ContingencyTable table;
  table.counts = Mat::Zero(kp, kt);
  table.n = static_cast<Index>(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    table.counts(p[i], t[i]) += 1.0;
  }
  return table;
}

std::vector<Index> hungarian(const Mat& weight) {
  if (weight.rows() != weight.cols() || weight.rows() < 1) {
    throw ConfigError("assignment needs a non-empty square matrix");
  }
  const Index n = weight.rows();
  const double inf = std::numeric_limits<double>::infinity();

  // Potentials-based shortest augmenting path on the negated weights
  // (1-based bookkeeping; column 0 is the virtual root).
  std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<Index> match(static_cast<std::size_t>(n) + 1, 0);
  std::vector<Index> way(static_cast<std::size_t>(n) + 1, 0);
  for (Index i = 1; i <= n; ++i) {
    match[0] = i;
    Index j0 = 0;
    std::vector<double> minv(static_cast<std::size_t>(n) + 1, inf);
    std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
    do {
      used[static_cast<std::size_t>(j0)] = 1;
      const Index i0 = match[static_cast<std::size_t>(j0)];
      double delta = inf;
      Index j1 = 0;
      for (Index j = 1; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const double cur = -weight(i0 - 1, j - 1) -
                           u[static_cast<std::size_t>(i0)] -
                           v[static_cast<std::size_t>(j)];
        if (cur < minv[static_cast<std::size_t>(j)]) {
          minv[static_cast<std::size_t>(j)] = cur;
          way[static_cast<std::size_t>(j)] = j0;
        }
        if (minv[static_cast<std::size_t>(j)] < delta) {
          delta = minv[static_cast<std::size_t>(j)];
          j1 = j;
        }
      }
      for (Index j = 0; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(match[static_cast<std::size_t>(j)])] +=
              delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          minv[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (match[static_cast<std::size_t>(j0)] != 0);
    do {
      const Index j1 = way[static_cast<std::size_t>(j0)];
      match[static_cast<std::size_t>(j0)] = match[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<Index> assignment(static_cast<std::size_t>(n), 0);
  for (Index j = 1; j <= n; ++j) {
    assignment[static_cast<std::size_t>(match[static_cast<std::size_t>(j)]) -
               1] = j - 1;
  }
  return assignment;
}

double accuracy(const std::vector<int>& pred, const std::vector<int>& truth) {
  const ContingencyTable table = ContingencyTable::from_labels(pred, truth);
  const Index side = std::max(table.counts.rows(), table.counts.cols());
  Mat padded = Mat::Zero(side, side);
  padded.topLeftCorner(table.counts.rows(), table.counts.cols()) =
      table.counts;
  const std::vector<Index> assignment = hungarian(padded);
  double matched = 0.0;
  for (Index i = 0; i < side; ++i) {
    matched += padded(i, assignment[static_cast<std::size_t>(i)]);
  }
  return matched / static_cast<double>(table.n);
}

double nmi(const std::vector<int>& pred, const std::vector<int>& truth) {
  const ContingencyTable table = ContingencyTable::from_labels(pred, truth);
  const double n = static_cast<double>(table.n);
  const Vec pred_counts = table.counts.rowwise().sum();
  const Vec truth_counts = table.counts.colwise().sum().transpose();
  const double hp = entropy(pred_counts, n);
  const double ht = entropy(truth_counts, n);
  if (hp == 0.0 && ht == 0.0) return 1.0;  // both trivial: identical partitions
  if (hp == 0.0 || ht == 0.0) return 0.0;
  double mi = 0.0;
  for (Index a = 0; a < table.counts.rows(); ++a) {
    for (Index b = 0; b < table.counts.cols(); ++b) {
      const double joint = table.counts(a, b);
      if (joint > 0.0) {
        mi += (joint / n) *
              std::log(n * joint / (pred_counts[a] * truth_counts[b]));
      }
    }
  }
  const double value = mi / std::sqrt(hp * ht);
  return std::clamp(value, 0.0, 1.0);
}

double purity(const std::vector<int>& pred, const std::vector<int>& truth) {
  const ContingencyTable table = ContingencyTable::from_labels(pred, truth);
  double matched = 0.0;
  for (Index a = 0; a < table.counts.rows(); ++a) {
    matched += table.counts.row(a).maxCoeff();
  }
  return matched / static_cast<double>(table.n);
}

double fscore(const std::vector<int>& pred, const std::vector<int>& truth) {
  const ContingencyTable table = ContingencyTable::from_labels(pred, truth);
  double same_pred = 0.0;
  double same_truth = 0.0;
  double same_both = 0.0;
  for (Index a = 0; a < table.counts.rows(); ++a) {
    same_pred += pair_count(table.counts.row(a).sum());
  }
  for (Index b = 0; b < table.counts.cols(); ++b) {
    same_truth += pair_count(table.counts.col(b).sum());
  }
  for (Index a = 0; a < table.counts.rows(); ++a) {
    for (Index b = 0; b < table.counts.cols(); ++b) {
      same_both += pair_count(table.counts(a, b));
    }
  }
  const double precision = same_pred > 0.0 ? same_both / same_pred : 0.0;
  const double recall = same_truth > 0.0 ? same_both / same_truth : 0.0;
  if (precision + recall <= 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

}  // namespace anchorclust
