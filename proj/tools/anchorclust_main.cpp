// Command line driver: run experiments, generate masks, synthesize datasets,
// and score label files.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "anchorclust/embedding.hpp"
#include "anchorclust/errors.hpp"
#include "anchorclust/experiment.hpp"
#include "anchorclust/manifest.hpp"
#include "anchorclust/mask_gen.hpp"
#include "anchorclust/metrics.hpp"
#include "anchorclust/synth.hpp"
#include "anchorclust/text_io.hpp"

namespace {

using anchorclust::Index;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct RunArgs {
  anchorclust::ExperimentConfig config;
  std::string out_path;
  std::string trace_path;
  bool grid = false;
};

std::string format_grid_value(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%g", x);
  return buffer;
}

void print_summary(const anchorclust::ExperimentResult& result) {
  std::printf("dataset=%s n=%lld views=%zu k=%lld m=%lld ratio=%.4f\n",
              result.dataset_name.c_str(),
              static_cast<long long>(result.n), result.dims.size(),
              static_cast<long long>(result.k),
              static_cast<long long>(result.m), result.achieved_ratio);
  for (const auto& [name, stats] : result.metrics) {
    std::printf("%-7s %.4f +/- %.4f\n", name.c_str(), stats.mean,
                stats.stddev);
  }
  std::printf("iterations=%zu total_ms=%.1f\n",
              result.traces.empty() ? 0 : result.traces[0].size(),
              result.total_ms);
}

int run_single(const RunArgs& args) {
  const anchorclust::ExperimentResult result =
      anchorclust::run_experiment(args.config);
  if (!args.out_path.empty()) {
    anchorclust::write_result_json(args.out_path, result);
  }
  if (!args.trace_path.empty()) {
    anchorclust::write_trace_csv(args.trace_path, result);
  }
  print_summary(result);
  return kExitOk;
}

int run_grid(const RunArgs& args) {
  if (args.out_path.empty()) {
    throw anchorclust::ConfigError("--grid needs --out DIRECTORY");
  }
  const std::filesystem::path out_dir(args.out_path);
  std::filesystem::create_directories(out_dir);
  for (const char* anchors : anchorclust::kAnchorGrid) {
    for (double lambda : anchorclust::kLambdaGrid) {
      for (double mu : anchorclust::kMuGrid) {
        anchorclust::ExperimentConfig cell = args.config;
        cell.anchors = anchors;
        cell.lambda = lambda;
        cell.mu = mu;
        const anchorclust::ExperimentResult result =
            anchorclust::run_experiment(cell);
        const std::string name = std::string("lam") +
                                 format_grid_value(lambda) + "_mu" +
                                 format_grid_value(mu) + "_m" + anchors +
                                 ".json";
        anchorclust::write_result_json(out_dir / name, result);
        std::printf("%-28s acc=%.4f nmi=%.4f purity=%.4f fscore=%.4f\n",
                    name.c_str(), result.metrics.at("acc").mean,
                    result.metrics.at("nmi").mean,
                    result.metrics.at("purity").mean,
                    result.metrics.at("fscore").mean);
      }
    }
  }
  return kExitOk;
}

anchorclust::SynthSpec parse_synth_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw anchorclust::IoError("cannot open spec: " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw anchorclust::IoError("spec " + path.string() + ": " + e.what());
  }
  anchorclust::SynthSpec spec;
  try {
    spec.n = doc.at("n").get<Index>();
    spec.k = doc.at("k").get<Index>();
    spec.views = doc.at("V").get<Index>();
    spec.dims = doc.at("dims").get<std::vector<Index>>();
    spec.cluster_separation = doc.at("cluster_separation").get<double>();
    spec.noise_std = doc.at("noise_std").get<double>();
    spec.seed = doc.at("seed").get<std::uint64_t>();
    if (doc.contains("name")) spec.name = doc["name"].get<std::string>();
    if (doc.contains("anchor_permutations") &&
        !doc["anchor_permutations"].is_null()) {
      spec.anchor_permutations =
          doc["anchor_permutations"].get<std::vector<std::vector<Index>>>();
    }
  } catch (const json::exception& e) {
    throw anchorclust::IoError("spec " + path.string() + ": " + e.what());
  }
  spec.validate();
  return spec;
}

int run_synth(const std::string& spec_path, const std::string& out_dir_str) {
  const anchorclust::SynthSpec spec = parse_synth_spec(spec_path);
  const anchorclust::SynthResult synth = anchorclust::synth_dataset(spec);
  const std::filesystem::path out_dir(out_dir_str);
  std::filesystem::create_directories(out_dir);

  anchorclust::DatasetManifest manifest;
  manifest.name = spec.name;
  manifest.n = spec.n;
  for (Index v = 0; v < spec.views; ++v) {
    const std::string file = "view_" + std::to_string(v) + ".csv";
    anchorclust::write_delimited_matrix(
        out_dir / file,
        synth.dataset.views[static_cast<std::size_t>(v)].transpose(), ',');
    manifest.views.push_back({file, spec.dims[static_cast<std::size_t>(v)]});
  }
  anchorclust::write_label_file(out_dir / "labels.txt",
                                *synth.dataset.labels);
  manifest.labels_path = "labels.txt";
  manifest.to_json_file(out_dir / "manifest.json");
  std::printf("wrote %s\n", (out_dir / "manifest.json").string().c_str());
  return kExitOk;
}

int run_mask(const std::string& manifest_path, double ratio,
             std::uint64_t seed, const std::string& out_path) {
  const anchorclust::DatasetManifest manifest =
      anchorclust::DatasetManifest::from_json_file(manifest_path);
  const anchorclust::PresenceMask mask = anchorclust::generate_mask(
      manifest.n, static_cast<Index>(manifest.views.size()), ratio, seed);
  anchorclust::write_mask_file(out_path, mask, manifest.delimiter);
  std::printf("wrote %s (removed %lld of %lld cells)\n", out_path.c_str(),
              static_cast<long long>(mask.missing_count()),
              static_cast<long long>(mask.presence.size()));
  return kExitOk;
}

int run_eval(const std::string& pred_path, const std::string& truth_path,
             const std::string& out_path) {
  const std::vector<long long> pred_raw =
      anchorclust::read_label_file(pred_path);
  const std::vector<long long> truth_raw =
      anchorclust::read_label_file(truth_path);
  if (pred_raw.size() != truth_raw.size()) {
    throw anchorclust::ConfigError("label files have different lengths");
  }
  std::vector<int> pred(pred_raw.begin(), pred_raw.end());
  std::vector<int> truth(truth_raw.begin(), truth_raw.end());
  json doc;
  doc["acc"] = anchorclust::accuracy(pred, truth);
  doc["nmi"] = anchorclust::nmi(pred, truth);
  doc["purity"] = anchorclust::purity(pred, truth);
  doc["fscore"] = anchorclust::fscore(pred, truth);
  const std::string text = doc.dump(2) + "\n";
  std::fputs(text.c_str(), stdout);
  if (!out_path.empty()) anchorclust::atomic_write_text(out_path, text);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anchor-graph clustering for incomplete multi-view data"};
  app.require_subcommand(1);

  RunArgs run_args;
  double run_ratio = -1.0;
  std::string run_mask_path;
  bool no_align = false;
  bool fixed_anchors = false;
  CLI::App* run = app.add_subcommand("run", "Run a scored experiment");
  run->add_option("--manifest", run_args.config.manifest_path,
                  "Dataset manifest JSON")->required();
  run->add_option("--mask", run_mask_path, "Presence mask file");
  run->add_option("--ratio", run_ratio, "Generate a mask at this missing ratio");
  run->add_option("--anchors", run_args.config.anchors,
                  "Anchor count: k, 2k, 5k, or an integer");
  run->add_option("--lambda", run_args.config.lambda, "Alignment trade-off");
  run->add_option("--mu", run_args.config.mu, "Graph regularization");
  run->add_option("--seed", run_args.config.seed, "Base RNG seed");
  run->add_option("--repeats", run_args.config.repeats, "Scoring repeats");
  run->add_option("--max-iters", run_args.config.max_iters, "Iteration cap");
  run->add_option("--tol", run_args.config.tol,
                  "Relative objective-change stop threshold");
  run->add_flag("--no-align", no_align,
                "Freeze alignment matrices at identity");
  run->add_flag("--fixed-anchors", fixed_anchors,
                "Keep k-means anchors fixed instead of learning them");
  run->add_flag("--remask", run_args.config.remask,
                "Redraw the generated mask for every repeat");
  run->add_option("--threads", run_args.config.threads, "Worker threads");
  run->add_option("--kmeans-restarts", run_args.config.kmeans_restarts,
                  "k-means restarts per clustering");
  run->add_option("--out", run_args.out_path,
                  "Result JSON path (directory with --grid)");
  run->add_option("--trace", run_args.trace_path, "Convergence trace CSV path");
  run->add_flag("--grid", run_args.grid,
                "Sweep the lambda/mu/anchor grids, one result per cell");

  std::string mask_manifest, mask_out;
  double mask_ratio = 0.0;
  std::uint64_t mask_seed = 0;
  CLI::App* mask = app.add_subcommand("mask", "Generate a presence mask file");
  mask->add_option("--manifest", mask_manifest, "Dataset manifest JSON")
      ->required();
  mask->add_option("--ratio", mask_ratio, "Missing ratio")->required();
  mask->add_option("--seed", mask_seed, "RNG seed");
  mask->add_option("--out", mask_out, "Output mask file")->required();

  std::string synth_spec, synth_out;
  CLI::App* synth = app.add_subcommand(
      "synth", "Synthesize a labeled dataset from a spec JSON");
  synth->add_option("--spec", synth_spec, "Synthesis spec JSON")->required();
  synth->add_option("--out-dir", synth_out, "Output directory")->required();

  std::string eval_pred, eval_truth, eval_out;
  CLI::App* eval =
      app.add_subcommand("eval", "Score predicted labels against truth");
  eval->add_option("--pred", eval_pred, "Predicted labels file")->required();
  eval->add_option("--truth", eval_truth, "Ground-truth labels file")
      ->required();
  eval->add_option("--out", eval_out, "Optional JSON output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*run) {
      if (run_ratio >= 0.0) run_args.config.ratio = run_ratio;
      if (!run_mask_path.empty()) run_args.config.mask_path = run_mask_path;
      run_args.config.align = !no_align;
      run_args.config.learn_anchors = !fixed_anchors;
      return run_args.grid ? run_grid(run_args) : run_single(run_args);
    }
    if (*mask) return run_mask(mask_manifest, mask_ratio, mask_seed, mask_out);
    if (*synth) return run_synth(synth_spec, synth_out);
    if (*eval) return run_eval(eval_pred, eval_truth, eval_out);
  } catch (const anchorclust::NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return kExitNumerical;
  } catch (const anchorclust::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const anchorclust::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return kExitOk;
}
