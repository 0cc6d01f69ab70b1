#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace thz {

// Numeric CSV with a single header row. Lines starting with '#' are comments.
struct NumericTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  // Index of a header column, or npos.
  std::size_t find(std::string_view name) const;
  std::size_t require(std::string_view name) const;  // throws ConfigError
};

NumericTable parse_numeric_csv(std::string_view text, std::string_view source);

// Shortest round-trip decimal form, so files are reproducible byte for byte.
std::string format_number(double value);

void write_provenance(std::ostream& out, std::string_view catalog_sha256);

}  // namespace thz
