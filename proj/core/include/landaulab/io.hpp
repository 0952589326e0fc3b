#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace landaulab::io {

// Shortest round-trip decimal form; byte-stable across runs on one platform.
std::string format_double(double value);
std::string format_int(long long value);

// Minimal CSV emitter: one header row, then data rows. Fields are written
// verbatim (callers format numbers).
class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path);

  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& fields);

 private:
  std::ofstream out_;
};

void write_text_file(const std::filesystem::path& path,
                     const std::string& content);

std::uint64_t fnv1a64(const std::string& text);

}  // namespace landaulab::io
