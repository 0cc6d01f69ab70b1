#include "thz/catalog.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include <fmt/format.h>

#include "thz/cache.hpp"
#include "thz/constants.hpp"

namespace thz::embedded {
extern const std::string_view mini_catalog_par;
}

namespace thz {
namespace {

struct Field {
  std::size_t first;  // 1-based column, as in the format documentation
  std::size_t width;
};

constexpr Field kMolecule{1, 2};
constexpr Field kIsotopologue{3, 1};
constexpr Field kNu{4, 12};
constexpr Field kIntensity{16, 10};
constexpr Field kEinsteinA{26, 10};
constexpr Field kGammaAir{36, 5};
constexpr Field kGammaSelf{41, 5};
constexpr Field kElower{46, 10};
constexpr Field kNair{56, 4};
constexpr Field kDelta{60, 8};

std::string column_range(Field f) {
  return fmt::format("columns {}-{}", f.first, f.first + f.width - 1);
}

std::string_view slice(std::string_view record, Field f) {
  return record.substr(f.first - 1, f.width);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

[[noreturn]] void unparseable(Field f, std::string_view text, std::string_view what) {
  throw Error(ErrorCode::UnparseableField,
              fmt::format("{} ({}): cannot parse '{}'", column_range(f), what, text));
}

double parse_real(std::string_view record, Field f, std::string_view what) {
  std::string_view text = trim(slice(record, f));
  std::string_view digits = text;
  if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
  double value = 0.0;
  auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (digits.empty() || ec != std::errc() || end != digits.data() + digits.size() ||
      !std::isfinite(value)) {
    unparseable(f, text, what);
  }
  return value;
}

int parse_int(std::string_view record, Field f, std::string_view what) {
  std::string_view text = trim(slice(record, f));
  int value = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size()) {
    unparseable(f, text, what);
  }
  return value;
}

// Single-character isotopologue code: 1-9, then 0 for 10, A for 11, B for 12.
int parse_isotopologue(std::string_view record) {
  char c = slice(record, kIsotopologue).front();
  if (c >= '1' && c <= '9') return c - '0';
  if (c == '0') return 10;
  if (c == 'A') return 11;
  if (c == 'B') return 12;
  unparseable(kIsotopologue, std::string_view(&c, 1), "isotopologue");
}

char isotopologue_code(int iso) {
  if (iso >= 1 && iso <= 9) return static_cast<char>('0' + iso);
  if (iso == 10) return '0';
  if (iso == 11) return 'A';
  if (iso == 12) return 'B';
  throw Error(ErrorCode::UnknownIsotopologue,
              fmt::format("isotopologue id {} has no single-column code", iso));
}

// Fortran Fw.d output: drops the leading zero when the field would overflow.
std::string fixed_field(double value, Field f, int decimals) {
  std::string s = fmt::format("{:{}.{}f}", value, f.width, decimals);
  if (s.size() > f.width) {
    auto pos = s.find("0.");
    if (pos != std::string::npos) s.erase(pos, 1);
  }
  if (s.size() != f.width) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("value {} does not fit {}", value, column_range(f)));
  }
  return s;
}

std::string exp_field(double value, Field f) {
  std::string s = fmt::format("{:{}.3E}", value, f.width);
  if (s.size() != f.width) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("value {} does not fit {}", value, column_range(f)));
  }
  return s;
}

}  // namespace

SpectralLine parse_line_record(std::string_view record, CatalogFormat format) {
  if (!record.empty() && record.back() == '\r') record.remove_suffix(1);
  if (record.size() != record_length(format)) {
    throw Error(ErrorCode::WrongRecordLength,
                fmt::format("record has {} characters, expected {}", record.size(),
                            record_length(format)));
  }
  SpectralLine line;
  line.molecule_id = parse_int(record, kMolecule, "molecule id");
  line.isotopologue_id = parse_isotopologue(record);
  line.nu0 = parse_real(record, kNu, "line centre");
  line.intensity = parse_real(record, kIntensity, "intensity");
  parse_real(record, kEinsteinA, "Einstein A");
  line.gamma_air = parse_real(record, kGammaAir, "air half width");
  line.gamma_self = parse_real(record, kGammaSelf, "self half width");
  line.e_lower = parse_real(record, kElower, "lower-state energy");
  line.n_air = parse_real(record, kNair, "temperature exponent");
  line.delta_air = parse_real(record, kDelta, "pressure shift");

  const IsotopologueInfo* iso = find_isotopologue(line.molecule_id, line.isotopologue_id);
  if (iso == nullptr) {
    throw Error(ErrorCode::UnknownIsotopologue,
                fmt::format("no abundance for molecule {} isotopologue {}", line.molecule_id,
                            line.isotopologue_id));
  }
  line.abundance = iso->abundance;
  return line;
}

std::string format_line_record(const SpectralLine& line, CatalogFormat format) {
  if (line.molecule_id < 0 || line.molecule_id > 99) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("molecule id {} does not fit columns 1-2", line.molecule_id));
  }
  std::string rec = fmt::format("{:2d}", line.molecule_id);
  rec += isotopologue_code(line.isotopologue_id);
  rec += fixed_field(line.nu0, kNu, 6);
  rec += exp_field(line.intensity, kIntensity);
  rec += exp_field(0.0, kEinsteinA);
  rec += fixed_field(line.gamma_air, kGammaAir, 4);
  rec += fixed_field(line.gamma_self, kGammaSelf, 3);
  rec += fixed_field(line.e_lower, kElower, 4);
  rec += fixed_field(line.n_air, kNair, 2);
  rec += fixed_field(line.delta_air, kDelta, 6);
  rec += std::string(60, ' ');
  rec += "000000";
  rec += std::string(13, ' ');
  rec += fmt::format("{:7.1f}{:7.1f}", 0.0, 0.0);
  if (rec.size() != record_length(format)) {
    throw Error(ErrorCode::WrongRecordLength, "formatted record has wrong length");
  }
  return rec;
}

LineCatalog::LineCatalog(std::vector<SpectralLine> lines, std::string source_id,
                         std::string sha256)
    : lines_(std::move(lines)), source_id_(std::move(source_id)), sha256_(std::move(sha256)) {
  std::erase_if(lines_, [](const SpectralLine& l) { return l.intensity == 0.0; });
  std::stable_sort(lines_.begin(), lines_.end(),
                   [](const SpectralLine& a, const SpectralLine& b) { return a.nu0 < b.nu0; });
}

LineCatalog LineCatalog::filtered(double nu_min, double nu_max,
                                  const std::set<int>& species) const {
  std::vector<SpectralLine> kept;
  for (const auto& l : lines_) {
    if (l.nu0 < nu_min || l.nu0 > nu_max) continue;
    if (!species.empty() && !species.contains(l.molecule_id)) continue;
    kept.push_back(l);
  }
  return LineCatalog(std::move(kept), source_id_, sha256_);
}

CatalogLoad load_catalog(std::istream& source, const CatalogFilter& filter,
                         std::string source_id) {
  if (!(filter.nu_min < filter.nu_max)) {
    throw Error(ErrorCode::InvalidRange,
                fmt::format("catalog window [{}, {}] cm^-1 is empty", filter.nu_min,
                            filter.nu_max));
  }
  std::ostringstream buffer;
  buffer << source.rdbuf();
  if (source.bad()) {
    throw Error(ErrorCode::IoFailure, "failed reading catalog " + source_id);
  }
  const std::string bytes = buffer.str();

  CatalogLoad result;
  std::vector<SpectralLine> lines;
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    std::size_t end = bytes.find('\n', pos);
    if (end == std::string::npos) end = bytes.size();
    std::string_view record(bytes.data() + pos, end - pos);
    pos = end + 1;
    ++line_number;
    if (trim(record).empty() || trim(record) == "\r") continue;
    try {
      SpectralLine line = parse_line_record(record);
      auto ov = filter.abundance_overrides.find({line.molecule_id, line.isotopologue_id});
      if (ov != filter.abundance_overrides.end()) line.abundance = ov->second;
      if (line.nu0 < filter.nu_min || line.nu0 > filter.nu_max) continue;
      if (!filter.species.empty() && !filter.species.contains(line.molecule_id)) continue;
      lines.push_back(line);
    } catch (const Error& e) {
      result.failures.push_back({line_number, e.code(), e.what()});
    }
  }
  result.catalog = LineCatalog(std::move(lines), std::move(source_id), sha256_hex(bytes));
  return result;
}

CatalogLoad load_catalog(const std::filesystem::path& path, const CatalogFilter& filter) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::IoFailure, "cannot open catalog " + path.string());
  }
  return load_catalog(in, filter, path.string());
}

std::string_view bundled_catalog_text() { return embedded::mini_catalog_par; }

CatalogLoad load_bundled_catalog(const CatalogFilter& filter) {
  std::istringstream in{std::string(bundled_catalog_text())};
  return load_catalog(in, filter, "bundled:mini_catalog.par");
}

double wavenumber_to_frequency(double nu) { return constants::hz_per_wavenumber * nu; }

double frequency_to_wavenumber(double f) { return f / constants::hz_per_wavenumber; }

}  // namespace thz
