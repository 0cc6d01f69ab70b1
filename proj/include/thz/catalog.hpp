#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "thz/error.hpp"

namespace thz {

/// One absorption line as stored in the catalog. Wavenumber-valued fields
/// keep the catalog units (cm^-1, cm^-1/atm); conversion to Hz happens in
/// the absorption engine.
struct SpectralLine {
  int molecule_id = 0;
  int isotopologue_id = 0;
  double nu0 = 0.0;         ///< line centre, cm^-1
  double intensity = 0.0;   ///< at T0 = 296 K, cm^-1/(molecule cm^-2)
  double gamma_air = 0.0;   ///< air-broadened HWHM at (p0, T0), cm^-1/atm
  double gamma_self = 0.0;  ///< self-broadened HWHM at (p0, T0), cm^-1/atm
  double e_lower = 0.0;     ///< lower-state energy, cm^-1
  double n_air = 0.0;       ///< temperature exponent of the widths
  double delta_air = 0.0;   ///< pressure shift at p0, cm^-1/atm
  double abundance = 1.0;   ///< natural isotopologue abundance
};

/// Record layouts understood by the parser.
///
/// Par160 is the 160-character layout used by HITRAN since 2004:
///
///   cols   1-2   I2     molecule id
///   col    3     I1     isotopologue id (0 means 10, A means 11)
///   cols   4-15  F12.6  line centre, cm^-1
///   cols  16-25  E10.3  intensity at 296 K
///   cols  26-35  E10.3  Einstein A (parsed, discarded)
///   cols  36-40  F5.4   air-broadened half width
///   cols  41-45  F5.3   self-broadened half width
///   cols  46-55  F10.4  lower-state energy
///   cols  56-59  F4.2   temperature exponent
///   cols  60-67  F8.6   air pressure shift
///   cols  68-160        quanta, uncertainty and reference codes, statistical
///                       weights (carried through, not interpreted)
enum class CatalogFormat { Par160 };

inline constexpr std::size_t record_length(CatalogFormat) { return 160; }

/// Parses one record. Throws Error with WrongRecordLength, UnparseableField
/// (message names the column range) or UnknownIsotopologue.
SpectralLine parse_line_record(std::string_view record,
                               CatalogFormat format = CatalogFormat::Par160);

/// Writes a line back into the fixed-width layout. Fields are rounded to the
/// column precision; columns 68-160 are blank apart from zeroed weights.
std::string format_line_record(const SpectralLine& line,
                               CatalogFormat format = CatalogFormat::Par160);

/// Immutable, sorted line list. Safe to share between threads.
class LineCatalog {
 public:
  LineCatalog() = default;
  LineCatalog(std::vector<SpectralLine> lines, std::string source_id,
              std::string sha256 = {});

  const std::vector<SpectralLine>& lines() const { return lines_; }
  const std::string& source_id() const { return source_id_; }
  /// SHA-256 of the source bytes, hex encoded. Empty when built in memory.
  const std::string& sha256() const { return sha256_; }
  std::size_t size() const { return lines_.size(); }
  bool empty() const { return lines_.empty(); }

  /// Lines with nu_min <= nu0 <= nu_max and molecule in `species`
  /// (every molecule when `species` is empty).
  LineCatalog filtered(double nu_min, double nu_max,
                       const std::set<int>& species = {}) const;

 private:
  std::vector<SpectralLine> lines_;
  std::string source_id_;
  std::string sha256_;
};

struct CatalogFilter {
  double nu_min = 0.0;  ///< cm^-1
  double nu_max = 0.0;  ///< cm^-1
  std::set<int> species;  ///< empty selects every molecule
  /// Replaces the built-in abundance for (molecule, isotopologue).
  std::map<std::pair<int, int>, double> abundance_overrides;
};

struct RecordFailure {
  std::size_t line_number = 0;  ///< 1-based
  ErrorCode code = ErrorCode::UnparseableField;
  std::string message;
};

struct CatalogLoad {
  LineCatalog catalog;
  std::vector<RecordFailure> failures;
  /// Warning-level signal: nothing matched the filter.
  bool empty() const { return catalog.empty(); }
};

/// Reads one record per line. Records that fail to parse are reported in
/// `failures`; zero-intensity lines are dropped. Throws IoFailure on stream
/// errors and InvalidRange when nu_min >= nu_max.
CatalogLoad load_catalog(std::istream& source, const CatalogFilter& filter,
                         std::string source_id = "stream");
CatalogLoad load_catalog(const std::filesystem::path& path,
                         const CatalogFilter& filter);

/// The bundled water/oxygen subset below 1 THz.
std::string_view bundled_catalog_text();
CatalogLoad load_bundled_catalog(const CatalogFilter& filter);

/// f = 100 c nu.
double wavenumber_to_frequency(double nu);
double frequency_to_wavenumber(double f);

struct IsotopologueInfo {
  int molecule_id;
  int isotopologue_id;
  double abundance;
  double mass_amu;
};

/// nullptr when the pair is not in the built-in table.
const IsotopologueInfo* find_isotopologue(int molecule_id, int isotopologue_id);

/// Canonical formula ("H2O", "O2", ...). Throws UnknownSpecies.
std::string_view molecule_name(int molecule_id);

}  // namespace thz
