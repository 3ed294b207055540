#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anchorclust/solver.hpp"

namespace anchorclust {

// Hyperparameter grids swept by --grid.
inline constexpr std::array<double, 5> kLambdaGrid = {1e-4, 1e-2, 1.0, 1e2,
                                                      1e4};
inline constexpr std::array<double, 6> kMuGrid = {0.0, 1e-4, 1e-2, 1.0, 1e2,
                                                  1e4};
inline constexpr std::array<const char*, 3> kAnchorGrid = {"k", "2k", "5k"};

// "k" / "2k" / "5k" as symbolic multiples of the cluster count, otherwise a
// positive integer literal.
Index resolve_anchor_count(const std::string& spec, Index k);

struct ExperimentConfig {
  std::string manifest_path;
  std::optional<std::string> mask_path;  // exclusive with ratio
  std::optional<double> ratio;           // generate a mask at this ratio
  std::string anchors = "2k";
  double lambda = 1.0;
  double mu = 1e-2;
  std::uint64_t seed = 0;
  int repeats = 1;
  int max_iters = 50;
  double tol = 1e-6;
  bool align = true;
  bool learn_anchors = true;
  bool remask = false;  // redraw the generated mask per repeat
  int kmeans_restarts = 10;
  int threads = 1;
};

struct MetricStats {
  double mean = 0.0;
  double stddev = 0.0;  // population; 0 when repeats == 1
};

struct ExperimentResult {
  ExperimentConfig config;
  std::string dataset_name;
  Index n = 0;
  Index k = 0;
  Index m = 0;
  std::vector<Index> dims;
  std::string mask_source;  // "file", "generated", or "complete"
  double achieved_ratio = 0.0;
  Index removed_cells = 0;
  std::vector<Index> per_view_observed;
  std::map<std::string, MetricStats> metrics;  // acc, nmi, purity, fscore
  std::vector<std::vector<IterationRecord>> traces;  // one per repeat
  std::vector<double> solve_ms;
  std::vector<double> cluster_ms;
  double total_ms = 0.0;

  // Pretty-printed JSON with lexicographically ordered keys; timing fields
  // are the only nondeterministic content and can be omitted.
  std::string to_json_string(bool include_timing = true) const;
};

// Loads the dataset (labels required), fixes or generates the mask, then runs
// solve + cluster + metrics `repeats` times with seeds seed+0 .. and
// aggregates mean/std per metric. Repeats may execute concurrently.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Atomic writers for the JSON result and the per-repeat convergence CSV
// (columns: repeat, iter, objective, term_reconstruction, term_alignment,
// term_regularization, wall_time_ms).
void write_result_json(const std::filesystem::path& path,
                       const ExperimentResult& result);
void write_trace_csv(const std::filesystem::path& path,
                     const ExperimentResult& result);

}  // namespace anchorclust
