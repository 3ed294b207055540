#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "anchorclust/dataset.hpp"
#include "anchorclust/types.hpp"

namespace anchorclust {

// Headerless delimited numeric text; one matrix row per line. Parse errors
// name the file, 1-based row, and 1-based column.
Mat read_delimited_matrix(const std::filesystem::path& path, char delimiter);

// Writes with round-trip-exact formatting ("%.17g").
void write_delimited_matrix(const std::filesystem::path& path, const Mat& m,
                            char delimiter);

// One integer per line.
std::vector<long long> read_label_file(const std::filesystem::path& path);
void write_label_file(const std::filesystem::path& path,
                      const std::vector<int>& labels);

// Masks are stored as n rows x V columns of 0/1 (transposed relative to the
// in-memory V x n layout).
PresenceMask read_mask_file(const std::filesystem::path& path, char delimiter);
void write_mask_file(const std::filesystem::path& path,
                     const PresenceMask& mask, char delimiter);

// Writes `content` to a temporary file in the target directory and renames it
// over `path`.
void atomic_write_text(const std::filesystem::path& path,
                       const std::string& content);

}  // namespace anchorclust
