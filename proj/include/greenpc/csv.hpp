#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace greenpc {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Doubles rendered with 12 significant digits so golden files are
/// byte-stable across runs and platforms with IEEE doubles.
std::string format_number(double v);

std::uint64_t fnv1a64(std::string_view data);

/// Comma-separated writer: one leading comment line with tool version,
/// config hash and seed, then a mandatory header row; LF line endings.
class CsvWriter {
public:
  CsvWriter(std::ostream& os, std::uint64_t config_hash, std::uint64_t seed);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);
  void comment(const std::string& text);

private:
  std::ostream& os_;
};

} // namespace greenpc
