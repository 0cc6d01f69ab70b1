#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "thz/scenario.hpp"

namespace thz {

enum class SweepAxis { Frequency, Altitude, Elevation };

SweepAxis parse_sweep_axis(std::string_view text);

/// Axis values are in GHz for frequency, metres for altitude (of the
/// airplane, or both airplanes for A2A) and degrees for elevation.
struct SweepRange {
  SweepAxis axis = SweepAxis::Frequency;
  double from = 0.0;
  double to = 0.0;
  double step = 0.0;

  std::vector<double> values() const;  // throws ConfigError when empty
};

/// Writes absorption.csv, path_loss.csv, snr.csv, capacity.csv and
/// summary.txt into out_dir. Returns the summary text.
std::string run_scenario(const Scenario& s, LinkEngine& engine,
                         const std::filesystem::path& out_dir);

/// Writes sweep.csv (`axis_value,frequency_hz,metric,value`) and, when
/// `crossover` is set, crossover.csv (`frequency_hz,crossover_altitude_m`).
void run_sweep(const Scenario& s, LinkEngine& engine, const SweepRange& range, bool crossover,
               const std::filesystem::path& out_dir, std::ostream* progress = nullptr);

/// A2G (ground terminal at the configured ground elevation) and A2S
/// (zenith) path loss at f, for each airplane altitude.
struct CrossoverCurves {
  std::vector<double> altitudes;
  std::vector<double> a2g_db;
  std::vector<double> a2s_db;
  std::optional<double> crossover;
};
CrossoverCurves crossover_curves(const Scenario& s, LinkEngine& engine, double f,
                                 const std::vector<double>& altitudes);

}  // namespace thz
