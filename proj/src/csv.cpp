#include "hhnet/csv.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>
#include <vector>

namespace hhnet {

std::string format_double(double value) {
  char buffer[40];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (result.ec != std::errc{}) {
    throw std::runtime_error("failed to format double");
  }
  return std::string(buffer, result.ptr);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open file for digest: " + path.string());
  }
  std::uint64_t hash = 0xcbf29ce484222325ull;
  std::vector<char> buffer(1 << 16);
  while (in) {
    in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
    const std::streamsize got = in.gcount();
    for (std::streamsize k = 0; k < got; ++k) {
      hash ^= static_cast<unsigned char>(buffer[k]);
      hash *= 0x100000001b3ull;
    }
  }
  return hash;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::string_view header) {
  out_.open(path, std::ios::binary | std::ios::trunc);
  if (!out_) {
    throw std::runtime_error("cannot open output file: " + path.string());
  }
  out_ << header << '\n';
}

void CsvWriter::row(std::string_view line) {
  out_ << line << '\n';
}

void CsvWriter::close() {
  out_.close();
  if (out_.fail()) {
    throw std::runtime_error("failed writing output file");
  }
}

}  // namespace hhnet
