#include "zk/field_io.hpp"

#include <cstdio>
#include <sstream>

namespace zk {

std::uint64_t fnv1a64(const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fnv1a64_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw config_error("cannot open for hashing: " + path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 16];
  while (is) {
    is.read(buf, sizeof(buf));
    const std::streamsize got = is.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void write_field_binary(const std::string& path, const Vector& field, const std::string& manifest) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw config_error("cannot open for writing: " + path);
  os.write(reinterpret_cast<const char*>(field.data()),
           static_cast<std::streamsize>(sizeof(double) * field.size()));
  if (!os) throw config_error("short write: " + path);
  std::ofstream ms(path + ".manifest");
  if (!ms) throw config_error("cannot open for writing: " + path + ".manifest");
  ms << manifest;
  if (manifest.empty() || manifest.back() != '\n') ms << "\n";
  ms << "count: " << field.size() << "\n";
  ms << "hash: " << hex64(fnv1a64(field.data(), sizeof(double) * field.size())) << "\n";
}

Vector read_field_binary(const std::string& path, std::string* manifest_out) {
  std::ifstream is(path, std::ios::binary | std::ios::ate);
  if (!is) throw config_error("cannot open: " + path);
  const std::streamsize bytes = is.tellg();
  if (bytes % static_cast<std::streamsize>(sizeof(double)) != 0)
    throw config_error("field file size is not a multiple of 8: " + path);
  is.seekg(0);
  Vector out(bytes / static_cast<std::streamsize>(sizeof(double)));
  is.read(reinterpret_cast<char*>(out.data()), bytes);
  if (!is) throw config_error("short read: " + path);
  if (manifest_out) *manifest_out = read_text_file(path + ".manifest");
  return out;
}

CsvWriter::CsvWriter(const std::string& path) : os_(path, std::ios::binary) {
  if (!os_) throw config_error("cannot open for writing: " + path);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::string& c = cells[i];
    const bool quote = c.find_first_of(",\"\r\n") != std::string::npos;
    if (i) os_ << ',';
    if (!quote) {
      os_ << c;
    } else {
      os_ << '"';
      for (char ch : c) {
        if (ch == '"') os_ << '"';
        os_ << ch;
      }
      os_ << '"';
    }
  }
  os_ << "\r\n";
}

std::string csv_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_num(int v) { return std::to_string(v); }

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw config_error("cannot open for writing: " + path);
  os << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw config_error("cannot open: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace zk
