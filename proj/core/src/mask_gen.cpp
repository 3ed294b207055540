#include "anchorclust/mask_gen.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <utility>
#include <vector>

#include "anchorclust/errors.hpp"
#include "anchorclust/rng.hpp"

namespace anchorclust {

PresenceMask generate_mask(Index n, Index views, double ratio,
                           std::uint64_t seed) {
  if (n < 1 || views < 1) {
    throw ConfigError("mask generation needs n >= 1 and views >= 1");
  }
  const double max_ratio =
      static_cast<double>(views - 1) / static_cast<double>(views);
  if (ratio < 0.0 || ratio > max_ratio) {
    std::ostringstream msg;
    msg << "missing ratio " << ratio << " outside [0, " << max_ratio
        << "] for " << views << " views";
    throw ConfigError(msg.str());
  }

  const Index quota = static_cast<Index>(
      std::floor(ratio * static_cast<double>(n) * static_cast<double>(views)));

  PresenceMask mask = PresenceMask::complete(views, n);
  if (quota == 0) return mask;

  Rng rng(seed);

  // One protected cell per view keeps every view nonempty; with distinct
  // protected samples the greedy pass below provably reaches any quota up to
  // n * (views - 1).
  std::vector<Index> sample_order(static_cast<std::size_t>(n));
  std::iota(sample_order.begin(), sample_order.end(), Index{0});
  rng.shuffle(sample_order);
  std::vector<Index> keeper(static_cast<std::size_t>(views));
  for (Index v = 0; v < views; ++v) {
    keeper[static_cast<std::size_t>(v)] =
        sample_order[static_cast<std::size_t>(v % n)];
  }

  std::vector<std::pair<Index, Index>> cells;
  cells.reserve(static_cast<std::size_t>(n * views));
  for (Index v = 0; v < views; ++v) {
    for (Index j = 0; j < n; ++j) {
      cells.emplace_back(v, j);
    }
  }
  rng.shuffle(cells);

  std::vector<Index> remaining(static_cast<std::size_t>(n), views);
  Index removed = 0;
  for (const auto& [v, j] : cells) {
    if (removed == quota) break;
    if (remaining[static_cast<std::size_t>(j)] <= 1) continue;
    if (keeper[static_cast<std::size_t>(v)] == j) continue;
    mask.presence(v, j) = 0.0;
    --remaining[static_cast<std::size_t>(j)];
    ++removed;
  }
  if (removed < quota) {
    std::ostringstream msg;
    msg << "mask quota unreachable: removed " << removed << " of " << quota
        << " cells for n=" << n << ", views=" << views;
    throw ConfigError(msg.str());
  }
  mask.validate();
  return mask;
}

}  // namespace anchorclust
