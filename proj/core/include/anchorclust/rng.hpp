#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "anchorclust/types.hpp"

namespace anchorclust {

// Seeded generator. All derived draws (bounded integers, gaussians, shuffles)
// are implemented on top of the raw mt19937_64 stream so that sequences are
// identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double next_double() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound); bound must be positive.
  std::uint64_t next_index(std::uint64_t bound);

  // Standard normal deviate (Marsaglia polar method).
  double next_gaussian();

  Mat gaussian_matrix(Index rows, Index cols);

  // In-place Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_index(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace anchorclust
