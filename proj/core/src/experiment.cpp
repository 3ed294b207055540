#include "anchorclust/experiment.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "anchorclust/embedding.hpp"
#include "anchorclust/errors.hpp"
#include "anchorclust/manifest.hpp"
#include "anchorclust/mask_gen.hpp"
#include "anchorclust/metrics.hpp"
#include "anchorclust/parallel.hpp"
#include "anchorclust/text_io.hpp"

namespace anchorclust {

using nlohmann::json;

Index resolve_anchor_count(const std::string& spec, Index k) {
  if (spec == "k") return k;
  if (spec == "2k") return 2 * k;
  if (spec == "5k") return 5 * k;
  Index value = 0;
  const auto [ptr, ec] =
      std::from_chars(spec.data(), spec.data() + spec.size(), value);
  if (ec != std::errc{} || ptr != spec.data() + spec.size() || value < 1) {
    throw ConfigError("anchor spec must be k, 2k, 5k, or a positive integer: '" +
                      spec + "'");
  }
  return value;
}

namespace {

MetricStats aggregate(const std::vector<double>& values) {
  MetricStats stats;
  const double n = static_cast<double>(values.size());
  for (double v : values) stats.mean += v;
  stats.mean /= n;
  double var = 0.0;
  for (double v : values) var += (v - stats.mean) * (v - stats.mean);
  stats.stddev = std::sqrt(var / n);  // population; 0 when repeats == 1
  return stats;
}

json trace_to_json(const std::vector<IterationRecord>& trace) {
  json rows = json::array();
  for (const IterationRecord& r : trace) {
    rows.push_back({{"iter", r.iter},
                    {"objective", r.objective},
                    {"term_reconstruction", r.term_reconstruction},
                    {"term_alignment", r.term_alignment},
                    {"term_regularization", r.term_regularization}});
  }
  return rows;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const auto t_start = std::chrono::steady_clock::now();
  if (config.repeats < 1) throw ConfigError("repeats must be >= 1");
  if (config.threads < 1) throw ConfigError("threads must be >= 1");
  if (config.mask_path && config.ratio) {
    throw ConfigError("give either a mask file or a ratio, not both");
  }
  if (config.remask && !config.ratio) {
    throw ConfigError("--remask needs a generated mask (--ratio)");
  }

  const std::filesystem::path manifest_path(config.manifest_path);
  const DatasetManifest manifest =
      DatasetManifest::from_json_file(manifest_path);
  LoadedDataset loaded = load_dataset(manifest, manifest_path.parent_path());
  const MultiViewDataset& data = loaded.dataset;
  if (!data.labels) {
    throw ConfigError("dataset '" + data.name +
                      "' has no labels; they are required to score a run");
  }
  const Index k = data.num_classes();
  if (k < 2) throw ConfigError("dataset has fewer than two classes");
  const Index m = resolve_anchor_count(config.anchors, k);

  ExperimentResult result;
  result.config = config;
  result.dataset_name = data.name;
  result.n = data.n;
  result.k = k;
  result.m = m;
  for (Index v = 0; v < data.view_count(); ++v) {
    result.dims.push_back(data.dim(v));
  }

  PresenceMask base_mask;
  if (config.mask_path) {
    base_mask = read_mask_file(*config.mask_path, manifest.delimiter);
    result.mask_source = "file";
  } else if (config.ratio) {
    base_mask = generate_mask(data.n, data.view_count(), *config.ratio,
                              config.seed);
    result.mask_source = "generated";
  } else {
    base_mask = PresenceMask::complete(data.view_count(), data.n);
    result.mask_source = "complete";
  }
  if (base_mask.view_count() != data.view_count() ||
      base_mask.sample_count() != data.n) {
    throw ConfigError("mask shape does not match the dataset");
  }
  result.removed_cells = base_mask.missing_count();
  result.achieved_ratio =
      static_cast<double>(result.removed_cells) /
      static_cast<double>(data.n * data.view_count());
  for (Index v = 0; v < data.view_count(); ++v) {
    result.per_view_observed.push_back(base_mask.observed_count(v));
  }

  const int repeats = config.repeats;
  result.traces.resize(static_cast<std::size_t>(repeats));
  result.solve_ms.resize(static_cast<std::size_t>(repeats));
  result.cluster_ms.resize(static_cast<std::size_t>(repeats));
  std::vector<double> acc(repeats), nmi_v(repeats), pur(repeats), fsc(repeats);

  // Repeats own their full state; run them across threads and keep each
  // repeat's solver single-threaded.
  const bool parallel_repeats = config.threads > 1 && repeats > 1;
  const int outer = parallel_repeats ? config.threads : 1;
  const int inner = parallel_repeats ? 1 : config.threads;

  parallel_for(0, static_cast<std::size_t>(repeats), outer, [&](std::size_t r) {
    SolverConfig scfg;
    scfg.m = m;
    scfg.k = k;
    scfg.lambda = config.lambda;
    scfg.mu = config.mu;
    scfg.max_iters = config.max_iters;
    scfg.tol = config.tol;
    scfg.seed = config.seed + static_cast<std::uint64_t>(r);
    scfg.align_enabled = config.align;
    scfg.learn_anchors = config.learn_anchors;
    scfg.kmeans_restarts = config.kmeans_restarts;
    scfg.threads = inner;

    const PresenceMask mask =
        config.remask && r > 0
            ? generate_mask(data.n, data.view_count(), *config.ratio,
                            config.seed + static_cast<std::uint64_t>(r))
            : base_mask;

    const auto t0 = std::chrono::steady_clock::now();
    SolveResult solved = solve(data, mask, scfg);
    const auto t1 = std::chrono::steady_clock::now();
    const std::vector<int> predicted = cluster(solved.state, scfg);
    const auto t2 = std::chrono::steady_clock::now();

    result.solve_ms[r] =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    result.cluster_ms[r] =
        std::chrono::duration<double, std::milli>(t2 - t1).count();
    result.traces[r] = std::move(solved.trace);
    acc[r] = accuracy(predicted, *data.labels);
    nmi_v[r] = nmi(predicted, *data.labels);
    pur[r] = purity(predicted, *data.labels);
    fsc[r] = fscore(predicted, *data.labels);
  });

  result.metrics["acc"] = aggregate(acc);
  result.metrics["nmi"] = aggregate(nmi_v);
  result.metrics["purity"] = aggregate(pur);
  result.metrics["fscore"] = aggregate(fsc);
  result.total_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t_start)
                        .count();
  return result;
}

std::string ExperimentResult::to_json_string(bool include_timing) const {
  json doc;
  doc["config"] = {
      {"dataset", dataset_name},
      {"manifest", config.manifest_path},
      {"n", n},
      {"views", dims},
      {"k", k},
      {"m", m},
      {"anchors", config.anchors},
      {"lambda", config.lambda},
      {"mu", config.mu},
      {"seed", config.seed},
      {"repeats", config.repeats},
      {"max_iters", config.max_iters},
      {"tol", config.tol},
      {"align", config.align},
      {"learn_anchors", config.learn_anchors},
      {"remask", config.remask},
      {"kmeans_restarts", config.kmeans_restarts},
      {"mask_source", mask_source},
  };
  if (config.mask_path) doc["config"]["mask_path"] = *config.mask_path;
  if (config.ratio) doc["config"]["ratio"] = *config.ratio;

  doc["metrics"] = json::object();
  for (const auto& [key, stats] : metrics) {
    doc["metrics"][key] = {{"mean", stats.mean}, {"std", stats.stddev}};
  }

  doc["traces"] = json::array();
  for (const auto& trace : traces) {
    doc["traces"].push_back(trace_to_json(trace));
  }

  doc["mask_stats"] = {
      {"achieved_ratio", achieved_ratio},
      {"removed", removed_cells},
      {"per_view_observed", per_view_observed},
  };
  if (config.ratio) doc["mask_stats"]["requested_ratio"] = *config.ratio;

  if (include_timing) {
    json per_iteration = json::array();
    for (const auto& trace : traces) {
      json row = json::array();
      for (const IterationRecord& r : trace) row.push_back(r.wall_time_ms);
      per_iteration.push_back(row);
    }
    doc["timing"] = {
        {"solve_ms", solve_ms},
        {"cluster_ms", cluster_ms},
        {"iteration_ms", per_iteration},
        {"total_ms", total_ms},
    };
  }
  return doc.dump(2) + "\n";
}

void write_result_json(const std::filesystem::path& path,
                       const ExperimentResult& result) {
  atomic_write_text(path, result.to_json_string(true));
}

void write_trace_csv(const std::filesystem::path& path,
                     const ExperimentResult& result) {
  std::ostringstream out;
  out << "repeat,iter,objective,term_reconstruction,term_alignment,"
         "term_regularization,wall_time_ms\n";
  char buffer[64];
  const auto fmt = [&](double x) {
    std::snprintf(buffer, sizeof(buffer), "%.17g", x);
    return std::string(buffer);
  };
  for (std::size_t r = 0; r < result.traces.size(); ++r) {
    for (const IterationRecord& rec : result.traces[r]) {
      out << r << ',' << rec.iter << ',' << fmt(rec.objective) << ','
          << fmt(rec.term_reconstruction) << ',' << fmt(rec.term_alignment)
          << ',' << fmt(rec.term_regularization) << ','
          << fmt(rec.wall_time_ms) << '\n';
    }
  }
  atomic_write_text(path, out.str());
}

}  // namespace anchorclust
