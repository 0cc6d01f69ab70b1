#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "thz/absorption.hpp"
#include "thz/atmosphere.hpp"
#include "thz/catalog.hpp"
#include "thz/geometry.hpp"

namespace thz {

class SpectrumCache;

struct AntennaConfig {
  double diameter = 0.0;    // m
  double efficiency = 1.0;  // aperture efficiency in (0, 1]
};

/// Rain and cloud exposure along one path.
struct WeatherConfig {
  double rain_rate = 0.0;            // mm/h
  double rain_path = 0.0;            // m
  double cloud_density = 0.0;        // g/m^3 liquid water
  double cloud_path = 0.0;           // m
  double cloud_temperature = 273.15; // K
};

/// Specific attenuation in dB, with a flag when the coefficient model was
/// evaluated outside its validity range.
struct Attenuation {
  double db = 0.0;
  bool extrapolated = false;
};

/// Free-space power gain (c / (4 pi f r))^2.
double spreading_loss(double f, double r);

/// Boresight gain efficiency (pi D f / c)^2.
double dish_gain(const AntennaConfig& antenna, double f);

/// Rain power-law coefficients at f for circular polarisation.
struct RainCoefficients {
  double k;
  double alpha;
  bool extrapolated;
};
RainCoefficients rain_coefficients(double f);

/// k R^alpha (path / 1 km). Above 1 THz the 1 THz coefficients are used and
/// the result is flagged.
Attenuation rain_attenuation(double f, double rain_rate, double path);

/// Liquid-water specific attenuation coefficient, (dB/km)/(g/m^3), from the
/// double-Debye permittivity of water in the Rayleigh regime.
double cloud_specific_attenuation(double f, double temperature);

/// K_l(f, T) density (path / 1 km); flagged above 200 GHz.
Attenuation cloud_attenuation(double f, double density, double path, double temperature);

/// Per-layer absorption on a shared grid: kappa(layer, frequency), 1/m.
struct LayerSpectra {
  Eigen::ArrayXd grid;
  Eigen::ArrayXXd kappa;
};

struct SpectraOptions {
  AbsorptionOptions absorption;
  unsigned threads = 1;
  const SpectrumCache* cache = nullptr;
  /// Layers to evaluate; all when empty. Others stay zero.
  std::vector<bool> needed;
};

/// Evaluates every requested layer, in parallel when threads > 1. Each
/// layer is computed independently, so output does not depend on the
/// thread count.
LayerSpectra compute_layer_spectra(const LineCatalog& catalog, const LayerStack& layers,
                                   const Eigen::ArrayXd& grid, const SpectraOptions& options);

/// Mask of the layers a set of segments touches.
std::vector<bool> layers_touched(const std::vector<PathSegment>& segments, std::size_t count);

/// sum_i kappa_i(f) length_i. Throws MisalignedLayers when a segment names a
/// layer that has no spectrum.
Eigen::ArrayXd optical_depth(const std::vector<PathSegment>& segments,
                             const LayerSpectra& spectra);

/// exp(-optical_depth).
Eigen::ArrayXd transmittance(const std::vector<PathSegment>& segments,
                             const LayerSpectra& spectra);

/// Same, from independent spectra; all must share `grid`.
Eigen::ArrayXd transmittance(const Eigen::ArrayXd& grid,
                             const std::vector<PathSegment>& segments,
                             const std::vector<AbsorptionSpectrum>& spectra);

struct PathLoss {
  Eigen::ArrayXd grid;
  Eigen::ArrayXd total;      // linear loss factor
  Eigen::ArrayXd tau;
  Eigen::ArrayXd spreading;  // linear gain
  Eigen::ArrayXd rain_db;
  Eigen::ArrayXd cloud_db;
  Eigen::ArrayXd antenna_gain;  // G_tx G_rx, linear
  bool rain_extrapolated = false;
  bool cloud_extrapolated = false;
};

/// PL = (1 / spreading) (1 / tau) delta_rain delta_cloud / (G_tx G_rx).
/// A missing antenna is isotropic.
PathLoss total_path_loss(const Eigen::ArrayXd& grid, double distance,
                         const Eigen::ArrayXd& tau,
                         const std::optional<AntennaConfig>& tx,
                         const std::optional<AntennaConfig>& rx,
                         const WeatherConfig& weather);

double to_db(double linear);

}  // namespace thz
