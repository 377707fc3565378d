#include "fracsim/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace fracsim {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : width_(header.size()) {
  if (header.empty()) throw std::invalid_argument("CsvWriter: empty header");
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) buf_ += ',';
    buf_ += header[i];
  }
  buf_ += '\n';
}

void CsvWriter::add_row(const std::vector<double>& values) {
  if (values.size() != width_) {
    throw std::invalid_argument("CsvWriter: row width mismatch");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) buf_ += ',';
    buf_ += format_double(values[i]);
  }
  buf_ += '\n';
}

void CsvWriter::add_row_with_index(std::uint64_t index,
                                   const std::vector<double>& values) {
  if (values.size() + 1 != width_) {
    throw std::invalid_argument("CsvWriter: row width mismatch");
  }
  buf_ += std::to_string(index);
  for (double v : values) {
    buf_ += ',';
    buf_ += format_double(v);
  }
  buf_ += '\n';
}

void CsvWriter::write_file(const std::string& path) const {
  write_text_file(path, buf_);
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

std::string to_hex(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_text_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace fracsim
