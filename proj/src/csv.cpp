#include "greenpc/csv.hpp"

#include <cstdio>

namespace greenpc {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

CsvWriter::CsvWriter(std::ostream& os, std::uint64_t config_hash, std::uint64_t seed) : os_(os) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "# greenpc %s config=%016llx seed=%llu",
                std::string(kToolVersion).c_str(),
                static_cast<unsigned long long>(config_hash),
                static_cast<unsigned long long>(seed));
  os_ << buf << '\n';
}

void CsvWriter::header(const std::vector<std::string>& columns) { row(columns); }

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os_ << ',';
    os_ << cells[i];
  }
  os_ << '\n';
}

void CsvWriter::comment(const std::string& text) { os_ << "# " << text << '\n'; }

} // namespace greenpc
