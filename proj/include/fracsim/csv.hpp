#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fracsim {

// Formats a double with 17 significant digits, enough to round-trip exactly;
// output is locale-independent.
std::string format_double(double v);

// Minimal CSV writer: comma separator, LF line endings, header row, floats at
// 17 significant digits. Rows must match the header width.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void add_row(const std::vector<double>& values);
  void add_row_with_index(std::uint64_t index, const std::vector<double>& values);
  const std::string& str() const { return buf_; }
  void write_file(const std::string& path) const;

 private:
  std::size_t width_;
  std::string buf_;
};

// FNV-1a 64-bit content hash, used for artifact manifests.
std::uint64_t fnv1a64(const std::string& bytes);
std::string to_hex(std::uint64_t v);

// Writes bytes to path atomically enough for our purposes (truncate+write).
void write_text_file(const std::string& path, const std::string& bytes);

}  // namespace fracsim
