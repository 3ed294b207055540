#include "anchorclust/text_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "anchorclust/errors.hpp"

namespace anchorclust {

namespace {

std::string read_whole_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void split_fields(const std::string& line, char delimiter,
                  std::vector<std::string_view>& fields) {
  fields.clear();
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delimiter, start);
    if (pos == std::string::npos) {
      fields.emplace_back(line.data() + start, line.size() - start);
      break;
    }
    fields.emplace_back(line.data() + start, pos - start);
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

double parse_double(std::string_view field, const std::filesystem::path& path,
                    std::size_t row, std::size_t col) {
  field = trim(field);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    std::ostringstream msg;
    msg << path.string() << ": non-numeric cell at row " << row << ", column "
        << col << ": '" << std::string(field) << "'";
    throw IoError(msg.str());
  }
  return value;
}

std::vector<std::string> nonempty_lines(const std::string& content) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= content.size()) {
    std::size_t pos = content.find('\n', start);
    if (pos == std::string::npos) pos = content.size();
    std::string line = content.substr(start, pos - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(std::move(line));
    start = pos + 1;
  }
  return lines;
}

std::string format_double(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

}  // namespace

Mat read_delimited_matrix(const std::filesystem::path& path, char delimiter) {
  const std::string content = read_whole_file(path);
  const std::vector<std::string> lines = nonempty_lines(content);
  if (lines.empty()) throw IoError(path.string() + ": file is empty");

  std::vector<std::string_view> fields;
  split_fields(lines[0], delimiter, fields);
  const std::size_t cols = fields.size();
  Mat m(static_cast<Index>(lines.size()), static_cast<Index>(cols));
  for (std::size_t row = 0; row < lines.size(); ++row) {
    split_fields(lines[row], delimiter, fields);
    if (fields.size() != cols) {
      std::ostringstream msg;
      msg << path.string() << ": row " << row + 1 << " has " << fields.size()
          << " columns, expected " << cols;
      throw IoError(msg.str());
    }
    for (std::size_t col = 0; col < cols; ++col) {
      m(static_cast<Index>(row), static_cast<Index>(col)) =
          parse_double(fields[col], path, row + 1, col + 1);
    }
  }
  return m;
}

void write_delimited_matrix(const std::filesystem::path& path, const Mat& m,
                            char delimiter) {
  std::string out;
  out.reserve(static_cast<std::size_t>(m.size()) * 20);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out.push_back(delimiter);
      out += format_double(m(i, j));
    }
    out.push_back('\n');
  }
  atomic_write_text(path, out);
}

std::vector<long long> read_label_file(const std::filesystem::path& path) {
  const std::string content = read_whole_file(path);
  const std::vector<std::string> lines = nonempty_lines(content);
  std::vector<long long> labels;
  labels.reserve(lines.size());
  for (std::size_t row = 0; row < lines.size(); ++row) {
    const std::string_view field = trim(lines[row]);
    long long value = 0;
    const auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
      std::ostringstream msg;
      msg << path.string() << ": non-integer label at row " << row + 1 << ": '"
          << std::string(field) << "'";
      throw IoError(msg.str());
    }
    labels.push_back(value);
  }
  return labels;
}

void write_label_file(const std::filesystem::path& path,
                      const std::vector<int>& labels) {
  std::string out;
  for (int value : labels) {
    out += std::to_string(value);
    out.push_back('\n');
  }
  atomic_write_text(path, out);
}

PresenceMask read_mask_file(const std::filesystem::path& path,
                            char delimiter) {
  const Mat on_disk = read_delimited_matrix(path, delimiter);
  PresenceMask mask;
  mask.presence = on_disk.transpose();
  mask.validate();
  return mask;
}

void write_mask_file(const std::filesystem::path& path,
                     const PresenceMask& mask, char delimiter) {
  std::string out;
  const Mat& p = mask.presence;
  for (Index j = 0; j < p.cols(); ++j) {
    for (Index v = 0; v < p.rows(); ++v) {
      if (v > 0) out.push_back(delimiter);
      out.push_back(p(v, j) != 0.0 ? '1' : '0');
    }
    out.push_back('\n');
  }
  atomic_write_text(path, out);
}

void atomic_write_text(const std::filesystem::path& path,
                       const std::string& content) {
  std::filesystem::path dir = path.parent_path();
  if (dir.empty()) dir = ".";
  std::filesystem::create_directories(dir);
  const std::filesystem::path tmp =
      dir / (path.filename().string() + ".tmp" +
             std::to_string(static_cast<unsigned long long>(
                 std::hash<std::string>{}(path.string()))));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write file: " + tmp.string());
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace anchorclust
