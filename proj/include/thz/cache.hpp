#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace thz {

struct AtmosphericState;
struct AbsorptionOptions;
class LineCatalog;

/// Hex-encoded SHA-256 digest.
std::string sha256_hex(std::string_view bytes);

/// Digest of the parsed line list (every field of every line), so that
/// abundance overrides or in-memory catalogs key distinct cache entries.
std::string catalog_digest(const LineCatalog& catalog);

/// On-disk store of per-layer absorption spectra, keyed by catalog digest,
/// atmospheric state, frequency grid and absorption options. Values round-trip
/// bit-exactly.
class SpectrumCache {
 public:
  explicit SpectrumCache(std::filesystem::path directory);

  const std::filesystem::path& directory() const { return directory_; }

  static std::string key(std::string_view catalog_digest, const AtmosphericState& state,
                         const Eigen::ArrayXd& grid, const AbsorptionOptions& options);

  std::optional<Eigen::ArrayXd> load(const std::string& key, Eigen::Index size) const;
  void store(const std::string& key, const Eigen::ArrayXd& kappa) const;

 private:
  std::filesystem::path directory_;
};

}  // namespace thz
