#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "anchorclust/dataset.hpp"

namespace anchorclust {

// On-disk description of a dataset: {"name", "n", "views": [{"path", "dim"}],
// "labels_path"?, "delimiter"?}. Relative paths resolve against the manifest
// file's directory.
struct DatasetManifest {
  struct ViewFile {
    std::string path;
    Index dim = 0;
  };

  std::string name;
  Index n = 0;
  std::vector<ViewFile> views;
  std::optional<std::string> labels_path;
  char delimiter = ',';

  static DatasetManifest from_json_file(const std::filesystem::path& path);
  void to_json_file(const std::filesystem::path& path) const;

  void validate() const;
};

struct LoadedDataset {
  MultiViewDataset dataset;  // labels recoded to 0..k-1 when present
  // Original label value for each class id (the recode mapping).
  std::vector<long long> label_values;
};

// Reads every view file (n rows x d_v columns on disk, stored as d_v x n) and
// the optional labels file. Dimension mismatches against the manifest are
// reported with the file name and expected/actual counts.
LoadedDataset load_dataset(const DatasetManifest& manifest,
                           const std::filesystem::path& base_dir);

}  // namespace anchorclust
