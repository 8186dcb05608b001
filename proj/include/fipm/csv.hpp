#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fipm {

/// Shortest representation that round-trips a double exactly.
inline std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path) : path_(path), out_(path) {
    if (!out_) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }

  void header(const std::vector<std::string>& columns) { raw_row(columns); }

  void row(std::span<const double> values) {
    for (std::size_t c = 0; c < values.size(); ++c) out_ << (c ? "," : "") << format_double(values[c]);
    out_ << '\n';
  }

  void row(std::initializer_list<double> values) { row(std::span<const double>(values.begin(), values.size())); }

  /// Pre-formatted fields.
  void raw_row(const std::vector<std::string>& fields) {
    for (std::size_t c = 0; c < fields.size(); ++c) out_ << (c ? "," : "") << fields[c];
    out_ << '\n';
  }

  void close() {
    out_.close();
    if (!out_) throw std::runtime_error("error writing '" + path_.string() + "'");
  }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

}  // namespace fipm
