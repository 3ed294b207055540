#include "anchorclust/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "anchorclust/errors.hpp"
#include "anchorclust/text_io.hpp"

namespace anchorclust {

using nlohmann::json;

DatasetManifest DatasetManifest::from_json_file(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest: " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError("manifest " + path.string() + ": " + e.what());
  }
  DatasetManifest manifest;
  try {
    manifest.name = doc.at("name").get<std::string>();
    manifest.n = doc.at("n").get<Index>();
    for (const auto& view : doc.at("views")) {
      manifest.views.push_back({view.at("path").get<std::string>(),
                                view.at("dim").get<Index>()});
    }
    if (doc.contains("labels_path") && !doc["labels_path"].is_null()) {
      manifest.labels_path = doc["labels_path"].get<std::string>();
    }
    if (doc.contains("delimiter")) {
      const auto d = doc["delimiter"].get<std::string>();
      if (d.size() != 1) {
        throw IoError("manifest " + path.string() +
                      ": delimiter must be a single character");
      }
      manifest.delimiter = d[0];
    }
  } catch (const json::exception& e) {
    throw IoError("manifest " + path.string() + ": " + e.what());
  }
  manifest.validate();
  return manifest;
}

void DatasetManifest::to_json_file(const std::filesystem::path& path) const {
  json doc;
  doc["name"] = name;
  doc["n"] = n;
  doc["views"] = json::array();
  for (const auto& view : views) {
    doc["views"].push_back({{"path", view.path}, {"dim", view.dim}});
  }
  if (labels_path) doc["labels_path"] = *labels_path;
  doc["delimiter"] = std::string(1, delimiter);
  atomic_write_text(path, doc.dump(2) + "\n");
}

void DatasetManifest::validate() const {
  if (views.empty()) throw ConfigError("manifest has no views");
  if (n < 1) throw ConfigError("manifest declares no samples");
  for (const auto& view : views) {
    if (view.dim < 1) {
      throw ConfigError("manifest view '" + view.path +
                        "' declares a non-positive dimension");
    }
  }
}

LoadedDataset load_dataset(const DatasetManifest& manifest,
                           const std::filesystem::path& base_dir) {
  manifest.validate();
  LoadedDataset loaded;
  loaded.dataset.name = manifest.name;
  loaded.dataset.n = manifest.n;
  for (std::size_t v = 0; v < manifest.views.size(); ++v) {
    const auto& spec = manifest.views[v];
    const std::filesystem::path path = base_dir / spec.path;
    const Mat on_disk = read_delimited_matrix(path, manifest.delimiter);
    if (on_disk.rows() != manifest.n) {
      std::ostringstream msg;
      msg << path.string() << ": expected " << manifest.n << " rows, found "
          << on_disk.rows();
      throw IoError(msg.str());
    }
    if (on_disk.cols() != spec.dim) {
      std::ostringstream msg;
      msg << path.string() << ": expected " << spec.dim << " columns, found "
          << on_disk.cols();
      throw IoError(msg.str());
    }
    loaded.dataset.views.push_back(on_disk.transpose());
  }

  if (manifest.labels_path) {
    const std::filesystem::path path = base_dir / *manifest.labels_path;
    const std::vector<long long> raw = read_label_file(path);
    if (static_cast<Index>(raw.size()) != manifest.n) {
      std::ostringstream msg;
      msg << path.string() << ": expected " << manifest.n
          << " labels, found " << raw.size();
      throw IoError(msg.str());
    }
    std::vector<long long> values(raw);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    std::map<long long, int> recode;
    for (std::size_t i = 0; i < values.size(); ++i) {
      recode[values[i]] = static_cast<int>(i);
    }
    std::vector<int> labels;
    labels.reserve(raw.size());
    for (long long value : raw) labels.push_back(recode[value]);
    loaded.dataset.labels = std::move(labels);
    loaded.label_values = std::move(values);
  }

  loaded.dataset.validate();
  return loaded;
}

}  // namespace anchorclust
