#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

namespace hhnet {

/// Shortest round-trip decimal representation (deterministic for a given
/// value, so output files are byte-reproducible).
std::string format_double(double value);

/// FNV-1a 64-bit digest of a byte range / file.
std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t fnv1a64_file(const std::filesystem::path& path);

/// Line-oriented CSV writer with a fixed header.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::string_view header);

  void row(std::string_view line);

  template <typename... Fields>
  void numeric_row(Fields... fields) {
    std::string line;
    bool first = true;
    auto append = [&](auto value) {
      if (!first) line += ',';
      first = false;
      if constexpr (std::is_floating_point_v<decltype(value)>) {
        line += format_double(value);
      } else {
        line += std::to_string(value);
      }
    };
    (append(fields), ...);
    row(line);
  }

  void close();

 private:
  std::ofstream out_;
};

}  // namespace hhnet
