#include "thz/channel.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "thz/cache.hpp"
#include "thz/constants.hpp"
#include "thz/error.hpp"

namespace thz {

using constants::pi;
using constants::speed_of_light;

double to_db(double linear) { return 10.0 * std::log10(linear); }

double spreading_loss(double f, double r) {
  if (!(f > 0.0) || !(r > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "spreading loss needs positive f and r");
  }
  const double x = speed_of_light / (4.0 * pi * f * r);
  return x * x;
}

double dish_gain(const AntennaConfig& antenna, double f) {
  if (!(antenna.diameter > 0.0) || !(antenna.efficiency > 0.0 && antenna.efficiency <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("dish needs diameter > 0 and efficiency in (0, 1], got {} m, {}",
                            antenna.diameter, antenna.efficiency));
  }
  const double x = pi * antenna.diameter * f / speed_of_light;
  return antenna.efficiency * x * x;
}

std::vector<bool> layers_touched(const std::vector<PathSegment>& segments, std::size_t count) {
  std::vector<bool> mask(count, false);
  for (const auto& s : segments) {
    if (s.layer < count) mask[s.layer] = true;
  }
  return mask;
}

LayerSpectra compute_layer_spectra(const LineCatalog& catalog, const LayerStack& layers,
                                   const Eigen::ArrayXd& grid, const SpectraOptions& options) {
  const std::size_t n = layers.size();
  if (!options.needed.empty() && options.needed.size() != n) {
    throw Error(ErrorCode::MisalignedLayers, "layer mask does not match the stack");
  }
  LayerSpectra out{grid, Eigen::ArrayXXd::Zero(static_cast<Eigen::Index>(n), grid.size())};

  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < n; ++i) {
    if (options.needed.empty() || options.needed[i]) todo.push_back(i);
  }

  const std::string digest = options.cache != nullptr ? catalog_digest(catalog) : std::string();
  auto evaluate = [&](std::size_t i) {
    const AtmosphericState& state = layers.layers[i].state;
    std::string key;
    if (options.cache != nullptr) {
      key = SpectrumCache::key(digest, state, grid, options.absorption);
      if (auto hit = options.cache->load(key, grid.size())) {
        out.kappa.row(static_cast<Eigen::Index>(i)) = hit->transpose();
        return;
      }
    }
    Eigen::ArrayXd kappa = absorption_coefficient(catalog, state, grid, options.absorption).kappa;
    if (options.cache != nullptr) options.cache->store(key, kappa);
    out.kappa.row(static_cast<Eigen::Index>(i)) = kappa.transpose();
  };

  const unsigned workers =
      std::min<unsigned>(std::max(1u, options.threads), static_cast<unsigned>(todo.size()));
  if (workers <= 1) {
    for (std::size_t i : todo) evaluate(i);
    return out;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t j = next++; j < todo.size(); j = next++) {
        try {
          evaluate(todo[j]);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

Eigen::ArrayXd optical_depth(const std::vector<PathSegment>& segments,
                             const LayerSpectra& spectra) {
  Eigen::ArrayXd depth = Eigen::ArrayXd::Zero(spectra.grid.size());
  for (const auto& s : segments) {
    if (s.layer >= static_cast<std::size_t>(spectra.kappa.rows())) {
      throw Error(ErrorCode::MisalignedLayers,
                  fmt::format("segment for layer {} but only {} spectra", s.layer,
                              spectra.kappa.rows()));
    }
    depth += spectra.kappa.row(static_cast<Eigen::Index>(s.layer)).transpose() * s.length;
  }
  return depth;
}

Eigen::ArrayXd transmittance(const std::vector<PathSegment>& segments,
                             const LayerSpectra& spectra) {
  return optical_depth(segments, spectra).unaryExpr([](double d) { return std::exp(-d); });
}

Eigen::ArrayXd transmittance(const Eigen::ArrayXd& grid,
                             const std::vector<PathSegment>& segments,
                             const std::vector<AbsorptionSpectrum>& spectra) {
  Eigen::ArrayXd depth = Eigen::ArrayXd::Zero(grid.size());
  for (const auto& s : segments) {
    if (s.layer >= spectra.size()) {
      throw Error(ErrorCode::MisalignedLayers,
                  fmt::format("segment for layer {} but only {} spectra", s.layer,
                              spectra.size()));
    }
    const AbsorptionSpectrum& sp = spectra[s.layer];
    if (sp.grid.size() != grid.size() || (sp.grid != grid).any()) {
      throw Error(ErrorCode::MisalignedLayers,
                  fmt::format("layer {} spectrum uses a different grid", s.layer));
    }
    depth += sp.kappa * s.length;
  }
  return depth.unaryExpr([](double d) { return std::exp(-d); });
}

PathLoss total_path_loss(const Eigen::ArrayXd& grid, double distance,
                         const Eigen::ArrayXd& tau,
                         const std::optional<AntennaConfig>& tx,
                         const std::optional<AntennaConfig>& rx,
                         const WeatherConfig& weather) {
  if (tau.size() != grid.size()) {
    throw Error(ErrorCode::MisalignedLayers, "transmittance and grid differ in length");
  }
  const Eigen::Index n = grid.size();
  PathLoss pl;
  pl.grid = grid;
  pl.tau = tau;
  pl.spreading.resize(n);
  pl.rain_db.resize(n);
  pl.cloud_db.resize(n);
  pl.antenna_gain.resize(n);
  pl.total.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double f = grid[i];
    pl.spreading[i] = spreading_loss(f, distance);
    const Attenuation rain = rain_attenuation(f, weather.rain_rate, weather.rain_path);
    const Attenuation cloud = cloud_attenuation(f, weather.cloud_density, weather.cloud_path,
                                                weather.cloud_temperature);
    pl.rain_db[i] = rain.db;
    pl.cloud_db[i] = cloud.db;
    pl.rain_extrapolated = pl.rain_extrapolated || (rain.extrapolated && rain.db > 0.0);
    pl.cloud_extrapolated = pl.cloud_extrapolated || (cloud.extrapolated && cloud.db > 0.0);
    const double g_tx = tx ? dish_gain(*tx, f) : 1.0;
    const double g_rx = rx ? dish_gain(*rx, f) : 1.0;
    pl.antenna_gain[i] = g_tx * g_rx;
    const double delta_rain = std::pow(10.0, rain.db / 10.0);
    const double delta_cloud = std::pow(10.0, cloud.db / 10.0);
    pl.total[i] = delta_rain * delta_cloud / (pl.spreading[i] * tau[i] * pl.antenna_gain[i]);
  }
  return pl;
}

}  // namespace thz
