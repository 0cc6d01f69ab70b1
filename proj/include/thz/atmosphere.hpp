#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

namespace thz {

/// Pressure, temperature and composition at one altitude. Mixing ratios are
/// keyed by catalog molecule id (1 = H2O, 7 = O2, ...).
struct AtmosphericState {
  double altitude = 0.0;     // m, geometric
  double pressure = 0.0;     // Pa
  double temperature = 0.0;  // K
  std::map<int, double> mixing_ratios;

  double vmr(int molecule_id) const;
};

struct Layer {
  double lower = 0.0;  // m
  double upper = 0.0;  // m
  AtmosphericState state;

  double thickness() const { return upper - lower; }
};

struct LayerStack {
  std::vector<Layer> layers;

  std::size_t size() const { return layers.size(); }
  double bottom_altitude() const { return layers.front().lower; }
  double top_altitude() const { return layers.back().upper; }
};

inline constexpr double kDefaultGroundH2O = 0.0078;
inline constexpr double kH2OScaleHeight = 2000.0;  // m

/// Source of atmospheric states as a function of geometric altitude.
///
/// The standard model is USSA-1976: the closed-form geopotential profile up
/// to 86 km, then a bundled table (log-pressure interpolation). Dry species
/// hold their sea-level ratios below 86 km. Water vapour decays
/// exponentially from its ground value with a 2 km scale height, and dry
/// ratios are diluted by (1 - h2o).
///
/// A custom model reads the same CSV schema as the bundled upper table:
/// `altitude_m,pressure_pa,temperature_k` plus any `<species>_vmr` columns
/// (species named as in molecule_name, lower case; `ar_vmr` is accepted
/// and ignored). Without an `h2o_vmr` column the exponential profile is
/// added.
class AtmosphereModel {
 public:
  static AtmosphereModel standard(std::optional<double> ground_h2o = std::nullopt);
  static AtmosphereModel from_csv(std::string_view text, std::string_view source,
                                  std::optional<double> ground_h2o = std::nullopt);
  static AtmosphereModel from_file(const std::filesystem::path& path,
                                   std::optional<double> ground_h2o = std::nullopt);

  /// Throws AltitudeOutOfRange outside [0, top()].
  AtmosphericState at(double altitude) const;
  double top() const;
  double ground_h2o() const { return ground_h2o_; }

 private:
  struct Table {
    std::vector<double> altitude, log_pressure, temperature;
    std::map<int, std::vector<double>> vmr;
    bool has_h2o = false;
  };

  AtmosphereModel(std::optional<Table> table, double ground_h2o);
  AtmosphericState from_table(const Table& t, double altitude) const;

  std::optional<Table> custom_;
  double ground_h2o_;
};

/// Standard-model state; `ground_h2o` replaces the 0.0078 sea-level value.
AtmosphericState profile_at(double altitude,
                            std::optional<double> ground_h2o = std::nullopt);

/// ceil((h_top - h_bottom) / resolution) contiguous layers sampled at their
/// midpoints; the last layer absorbs the remainder.
LayerStack build_layers(double h_bottom, double h_top, double resolution,
                        const AtmosphereModel& model = AtmosphereModel::standard());

/// Water-vapour ratio of the default exponential profile.
double default_h2o_profile(double altitude, double ground_h2o = kDefaultGroundH2O);

}  // namespace thz
