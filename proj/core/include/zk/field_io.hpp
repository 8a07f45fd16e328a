#pragma once

#include "zk/types.hpp"

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace zk {

/// FNV-1a 64-bit content hash (provenance stamp, not cryptographic).
std::uint64_t fnv1a64(const void* data, std::size_t n);
std::uint64_t fnv1a64_file(const std::string& path);
std::string hex64(std::uint64_t v);

/// Raw little-endian f64 dump in the documented flattening order; the
/// manifest goes to "<path>.manifest" as plain text.
void write_field_binary(const std::string& path, const Vector& field, const std::string& manifest);
Vector read_field_binary(const std::string& path, std::string* manifest_out = nullptr);

/// RFC-4180 CSV: CRLF line terminators, minimal quoting.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  void row(const std::vector<std::string>& cells);
  void comment_free_header(const std::vector<std::string>& names) { row(names); }

 private:
  std::ofstream os_;
};

std::string csv_num(double v);   // round-trip-exact decimal
std::string csv_num(int v);

/// Plain-text report file with a provenance preamble.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace zk
