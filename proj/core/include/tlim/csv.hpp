#pragma once

#include <charconv>
#include <concepts>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tlim/errors.hpp"

namespace tlim {

// Locale-independent formatting, 17 significant digits (round-trip safe).
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

// Appends rows to an in-memory buffer; write() flushes the whole file at
// once so partially written artifacts never appear on disk.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
    append_row(header);
  }

  void row(const std::vector<std::string>& cells) {
    if (cells.size() != columns_)
      throw InvalidInput("csv row has " + std::to_string(cells.size()) +
                         " cells, expected " + std::to_string(columns_));
    append_row(cells);
  }

  static std::string cell(double v) { return format_double(v); }
  static std::string cell(bool v) { return v ? "1" : "0"; }
  static std::string cell(const std::string& v) { return v; }
  template <typename T>
    requires std::integral<T>
  static std::string cell(T v) {
    return std::to_string(v);
  }

  const std::string& text() const { return buf_; }

  void write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << buf_;
    if (!out) throw IoError("write failed: " + path);
  }

 private:
  void append_row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) buf_ += ',';
      buf_ += cells[i];
    }
    buf_ += '\n';
  }

  std::size_t columns_;
  std::string buf_;
};

}  // namespace tlim
