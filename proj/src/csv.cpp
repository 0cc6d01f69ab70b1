#include "thz/csv.hpp"

#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "thz/error.hpp"

namespace thz {
namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    out.push_back(strip(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::size_t NumericTable::find(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  return static_cast<std::size_t>(-1);
}

std::size_t NumericTable::require(std::string_view name) const {
  std::size_t i = find(name);
  if (i == static_cast<std::size_t>(-1)) {
    throw Error(ErrorCode::ConfigError, fmt::format("missing column '{}'", name));
  }
  return i;
}

NumericTable parse_numeric_csv(std::string_view text, std::string_view source) {
  NumericTable table;
  std::size_t pos = 0;
  std::size_t line_number = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = strip(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_number;
    if (line.empty() || line.front() == '#') continue;

    auto cells = split(line);
    if (table.header.empty()) {
      for (auto c : cells) table.header.emplace_back(c);
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw Error(ErrorCode::ConfigError,
                  fmt::format("{}:{}: expected {} fields, found {}", source, line_number,
                              table.header.size(), cells.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
      double v = 0.0;
      auto [p, ec] = std::from_chars(cells[i].data(), cells[i].data() + cells[i].size(), v);
      if (cells[i].empty() || ec != std::errc() || p != cells[i].data() + cells[i].size()) {
        throw Error(ErrorCode::ConfigError,
                    fmt::format("{}:{}: column '{}' is not a number: '{}'", source,
                                line_number, table.header[i], cells[i]));
      }
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  if (table.header.empty()) {
    throw Error(ErrorCode::ConfigError, fmt::format("{}: no header row", source));
  }
  return table;
}

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  return fmt::format("{}", value);
}

void write_provenance(std::ostream& out, std::string_view catalog_sha256) {
  out << "# thzlink " << THZLINK_VERSION << " catalog_sha256=" << catalog_sha256 << '\n';
}

}  // namespace thz
