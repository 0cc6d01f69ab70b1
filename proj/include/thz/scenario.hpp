#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "thz/absorption.hpp"
#include "thz/atmosphere.hpp"
#include "thz/catalog.hpp"
#include "thz/channel.hpp"
#include "thz/constants.hpp"
#include "thz/geometry.hpp"
#include "thz/link.hpp"

namespace thz {

/// Link direction: transmitter, then receiver. A = airplane, S = satellite,
/// E = ground station.
enum class ScenarioKind { A2S, S2A, E2A, A2E, E2S, S2E, A2A };

std::string_view to_string(ScenarioKind kind);
ScenarioKind parse_scenario_kind(std::string_view text);

/// Same link with transmitter and receiver exchanged.
ScenarioKind reversed(ScenarioKind kind);

/// Everything a run needs, in SI units. The config file uses the unit
/// suffixes listed in config_keys(); values here are converted.
struct Scenario {
  ScenarioKind kind = ScenarioKind::A2S;

  double airplane_altitude = 11'000.0;  // m
  double airplane2_altitude = -1.0;     // m, A2A receiver; negative means same
  double satellite_altitude = 500'000.0;
  double ground_altitude = 0.0;
  double central_angle = 0.0;                // rad
  std::optional<double> elevation;           // rad at the lower terminal, overrides rho
  double a2a_distance = 100'000.0;           // m, great-circle at sea level

  AntennaConfig airplane_dish{0.5, 1.0};
  AntennaConfig satellite_dish{1.0, 1.0};
  AntennaConfig ground_dish{1.0, 1.0};

  TransceiverConfig transceiver;

  double rain_rate = 0.0;  // mm/h
  double rain_base = 0.0;  // m
  double rain_top = 700.0;
  double cloud_density = 0.0;  // g/m^3
  double cloud_base = 700.0;
  double cloud_thickness = 1000.0;

  double layer_resolution = 500.0;  // m
  double atmosphere_top = 500'000.0;
  std::optional<double> ground_h2o;
  std::string atmosphere_file;
  std::string catalog_file;  // bundled catalog when empty

  double f_min = 100e9;  // Hz
  double f_max = 1000e9;
  double f_step = 1e9;
  double capacity_step = 100e6;  // Hz
  double wing_cutoff = 750e9;    // Hz

  double ground_elevation = 5.0 * constants::pi / 180.0;  // rad, crossover A2G leg
  std::vector<double> crossover_frequencies{300e9, 660e9, 940e9};
};

/// key = value lines; '#' starts a comment. Unknown keys, malformed
/// numbers and out-of-range values raise ConfigError naming the line and
/// key.
Scenario parse_scenario(std::string_view text, std::string_view source = "config");
Scenario load_scenario(const std::filesystem::path& path);

/// Every accepted key with its unit, for help output.
const std::vector<std::pair<std::string, std::string>>& config_keys();

/// Human-readable resolved scenario.
std::string describe(const Scenario& s);

/// Transmitter and receiver altitudes and dishes for a scenario.
struct Terminals {
  double tx_altitude;
  double rx_altitude;
  AntennaConfig tx_dish;
  AntennaConfig rx_dish;
  double rho;  // central angle after resolving elevation / distance
};
Terminals resolve_terminals(const Scenario& s);

Eigen::ArrayXd make_grid(double f_min, double f_max, double step);

struct ScenarioResult {
  Eigen::ArrayXd grid;
  LinkEndpoints endpoints;
  PathGeometry geometry;
  PathLoss path_loss;
  Eigen::ArrayXd brightness;  // K, Planck
  Eigen::ArrayXd noise_psd;   // W/Hz
  Eigen::ArrayXd snr;
  double rain_path = 0.0;   // m
  double cloud_path = 0.0;  // m
};

struct CapacityReport {
  double band_capacity = 0.0;  // bit/s over the configured band
  Window best;                 // best placement of the band on the survey grid
  double best_refined = 0.0;   // best window re-integrated at capacity_step
};

struct EngineOptions {
  unsigned threads = 1;
  std::optional<std::filesystem::path> cache_dir;
};

/// Holds the catalog, atmosphere and per-grid layer spectra shared by every
/// evaluation of scenarios that agree on atmosphere and catalog settings.
/// Not thread-safe; one engine per driver.
class LinkEngine {
 public:
  LinkEngine(const Scenario& base, EngineOptions options = {});
  ~LinkEngine();
  LinkEngine(const LinkEngine&) = delete;
  LinkEngine& operator=(const LinkEngine&) = delete;

  const LineCatalog& catalog() const { return catalog_; }
  const std::vector<RecordFailure>& catalog_failures() const { return failures_; }
  const LayerStack& layers() const { return layers_; }
  const AtmosphereModel& atmosphere() const { return model_; }

  ScenarioResult evaluate(const Scenario& s, const Eigen::ArrayXd& grid);
  CapacityReport capacities(const Scenario& s, const ScenarioResult& survey);

  /// Absorption at the altitude of the lower terminal.
  AbsorptionSpectrum absorption_at(double altitude, const Eigen::ArrayXd& grid) const;

 private:
  struct GridSpectra;
  const LayerSpectra& spectra_for(const Eigen::ArrayXd& grid, const std::vector<bool>& needed);

  EngineOptions options_;
  AbsorptionOptions absorption_;
  LineCatalog catalog_;
  std::vector<RecordFailure> failures_;
  AtmosphereModel model_;
  LayerStack layers_;
  std::unique_ptr<SpectrumCache> cache_;
  std::vector<std::unique_ptr<GridSpectra>> memo_;
};

/// Crossing of two loss curves sampled on the same altitudes, linearly
/// interpolated; nullopt when the sign of the difference never changes.
std::optional<double> crossover_altitude(const std::vector<double>& altitudes,
                                         const std::vector<double>& loss_a_db,
                                         const std::vector<double>& loss_b_db);

}  // namespace thz
