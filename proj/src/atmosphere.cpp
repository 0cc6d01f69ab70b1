#include "thz/atmosphere.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "thz/catalog.hpp"
#include "thz/csv.hpp"
#include "thz/error.hpp"

namespace thz::embedded {
extern const std::string_view ussa1976_upper_csv;
}

namespace thz {
namespace {

constexpr int kH2O = 1;
constexpr int kCO2 = 2;
constexpr int kCH4 = 6;
constexpr int kO2 = 7;
constexpr int kN2 = 22;

// USSA-1976 constants.
constexpr double kR0 = 6'356'766.0;           // m, effective Earth radius
constexpr double kG0 = 9.80665;               // m/s^2
constexpr double kM0 = 28.9644e-3;            // kg/mol
constexpr double kRstar = 8.31432;            // J/(mol K), the 1976 value
constexpr double kGMR = kG0 * kM0 / kRstar;   // K/m
constexpr double kClosedFormTop = 86'000.0;   // m, geometric

struct Segment {
  double base_h;  // geopotential m
  double lapse;   // K/m
};

constexpr std::array<Segment, 7> kSegments{{
    {0.0, -0.0065},
    {11'000.0, 0.0},
    {20'000.0, 0.0010},
    {32'000.0, 0.0028},
    {47'000.0, 0.0},
    {51'000.0, -0.0028},
    {71'000.0, -0.0020},
}};

// Molecular-weight ratio M/M0 between 80 and 86 km geometric, 0.5 km steps.
constexpr std::array<double, 13> kMolecularWeightRatio{
    1.000000, 0.999996, 0.999989, 0.999971, 0.999941, 0.999909, 0.999870,
    0.999829, 0.999786, 0.999741, 0.999694, 0.999641, 0.999579};

struct Base {
  double temperature;
  double pressure;
};

const std::array<Base, 7>& segment_bases() {
  static const std::array<Base, 7> bases = [] {
    std::array<Base, 7> b{};
    b[0] = {288.15, 101'325.0};
    for (std::size_t i = 1; i < kSegments.size(); ++i) {
      double dh = kSegments[i].base_h - kSegments[i - 1].base_h;
      double tb = b[i - 1].temperature;
      double lapse = kSegments[i - 1].lapse;
      double t = tb + lapse * dh;
      double p = lapse == 0.0 ? b[i - 1].pressure * std::exp(-kGMR * dh / tb)
                              : b[i - 1].pressure * std::pow(tb / t, kGMR / lapse);
      b[i] = {t, p};
    }
    return b;
  }();
  return bases;
}

// Kinetic temperature and pressure from the closed form, z geometric.
std::pair<double, double> lower_atmosphere(double z) {
  const double h = kR0 * z / (kR0 + z);
  std::size_t i = kSegments.size() - 1;
  while (i > 0 && h < kSegments[i].base_h) --i;
  const Base& b = segment_bases()[i];
  const double lapse = kSegments[i].lapse;
  const double dh = h - kSegments[i].base_h;
  const double tm = b.temperature + lapse * dh;
  const double p = lapse == 0.0 ? b.pressure * std::exp(-kGMR * dh / b.temperature)
                                : b.pressure * std::pow(b.temperature / tm, kGMR / lapse);

  double ratio = 1.0;
  if (z > 80'000.0) {
    double x = (z - 80'000.0) / 500.0;
    auto k = std::min<std::size_t>(static_cast<std::size_t>(x), kMolecularWeightRatio.size() - 2);
    double w = x - static_cast<double>(k);
    ratio = kMolecularWeightRatio[k] * (1.0 - w) + kMolecularWeightRatio[k + 1] * w;
  }
  return {tm * ratio, p};
}

const std::map<int, double>& sea_level_dry() {
  static const std::map<int, double> m{
      {kN2, 0.78084}, {kO2, 0.209476}, {kCO2, 0.000314}, {kCH4, 0.000002}};
  return m;
}

int species_from_column(std::string_view column) {
  static const std::array<int, 8> ids{1, 2, 3, 4, 5, 6, 7, 22};
  for (int id : ids) {
    std::string name(molecule_name(id));
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (column == name + "_vmr") return id;
  }
  return 0;
}

}  // namespace

double AtmosphericState::vmr(int molecule_id) const {
  auto it = mixing_ratios.find(molecule_id);
  return it == mixing_ratios.end() ? 0.0 : it->second;
}

double default_h2o_profile(double altitude, double ground_h2o) {
  return ground_h2o * std::exp(-altitude / kH2OScaleHeight);
}

AtmosphereModel::AtmosphereModel(std::optional<Table> table, double ground_h2o)
    : custom_(std::move(table)), ground_h2o_(ground_h2o) {
  if (!(ground_h2o_ >= 0.0 && ground_h2o_ < 1.0)) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("ground water-vapour ratio {} outside [0, 1)", ground_h2o_));
  }
}

AtmosphereModel AtmosphereModel::standard(std::optional<double> ground_h2o) {
  return AtmosphereModel(std::nullopt, ground_h2o.value_or(kDefaultGroundH2O));
}

AtmosphereModel AtmosphereModel::from_csv(std::string_view text, std::string_view source,
                                          std::optional<double> ground_h2o) {
  NumericTable csv = parse_numeric_csv(text, source);
  const std::size_t ia = csv.require("altitude_m");
  const std::size_t ip = csv.require("pressure_pa");
  const std::size_t it = csv.require("temperature_k");
  if (csv.rows.size() < 2) {
    throw Error(ErrorCode::ConfigError, fmt::format("{}: need at least two rows", source));
  }

  Table t;
  std::map<std::size_t, int> species_columns;
  for (std::size_t c = 0; c < csv.header.size(); ++c) {
    const std::string& name = csv.header[c];
    if (c == ia || c == ip || c == it || name == "ar_vmr") continue;
    int id = species_from_column(name);
    if (id == 0) {
      throw Error(ErrorCode::UnknownSpecies,
                  fmt::format("{}: unrecognised column '{}'", source, name));
    }
    species_columns[c] = id;
    if (id == kH2O) t.has_h2o = true;
  }

  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const auto& row = csv.rows[r];
    if (!(row[ip] > 0.0) || !(row[it] > 0.0)) {
      throw Error(ErrorCode::ConfigError,
                  fmt::format("{}: row {} needs positive pressure and temperature", source, r + 1));
    }
    if (r > 0 && !(row[ia] > t.altitude.back())) {
      throw Error(ErrorCode::ConfigError,
                  fmt::format("{}: altitudes must increase strictly (row {})", source, r + 1));
    }
    t.altitude.push_back(row[ia]);
    t.log_pressure.push_back(std::log(row[ip]));
    t.temperature.push_back(row[it]);
    for (auto [c, id] : species_columns) {
      if (row[c] < 0.0 || row[c] > 1.0) {
        throw Error(ErrorCode::ConfigError,
                    fmt::format("{}: row {} column '{}' outside [0, 1]", source, r + 1,
                                csv.header[c]));
      }
      t.vmr[id].push_back(row[c]);
    }
  }
  return AtmosphereModel(std::move(t), ground_h2o.value_or(kDefaultGroundH2O));
}

AtmosphereModel AtmosphereModel::from_file(const std::filesystem::path& path,
                                           std::optional<double> ground_h2o) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open atmosphere file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return from_csv(text.str(), path.string(), ground_h2o);
}

double AtmosphereModel::top() const {
  if (custom_) return custom_->altitude.back();
  return 500'000.0;
}

AtmosphericState AtmosphereModel::from_table(const Table& t, double altitude) const {
  auto upper = std::upper_bound(t.altitude.begin(), t.altitude.end(), altitude);
  std::size_t k = static_cast<std::size_t>(upper - t.altitude.begin());
  k = std::clamp<std::size_t>(k, 1, t.altitude.size() - 1) - 1;
  const double w = (altitude - t.altitude[k]) / (t.altitude[k + 1] - t.altitude[k]);
  auto lerp = [&](const std::vector<double>& v) { return v[k] + w * (v[k + 1] - v[k]); };

  AtmosphericState s;
  s.altitude = altitude;
  s.pressure = std::exp(lerp(t.log_pressure));
  s.temperature = lerp(t.temperature);
  for (const auto& [id, column] : t.vmr) s.mixing_ratios[id] = lerp(column);
  return s;
}

AtmosphericState AtmosphereModel::at(double altitude) const {
  const double bottom = custom_ ? custom_->altitude.front() : 0.0;
  if (!(altitude >= bottom && altitude <= top())) {
    throw Error(ErrorCode::AltitudeOutOfRange,
                fmt::format("altitude {} m outside the modelled range [{}, {}] m", altitude,
                            bottom, top()));
  }

  AtmosphericState s;
  bool has_h2o = false;
  if (custom_) {
    s = from_table(*custom_, altitude);
    has_h2o = custom_->has_h2o;
  } else if (altitude <= kClosedFormTop) {
    auto [t, p] = lower_atmosphere(altitude);
    s.altitude = altitude;
    s.temperature = t;
    s.pressure = p;
    s.mixing_ratios = sea_level_dry();
  } else {
    static const Table upper = [] {
      AtmosphereModel m = from_csv(embedded::ussa1976_upper_csv, "ussa1976_upper.csv");
      return *m.custom_;
    }();
    s = from_table(upper, altitude);
  }

  if (!has_h2o) {
    const double h2o = default_h2o_profile(altitude, ground_h2o_);
    for (auto& [id, v] : s.mixing_ratios) v *= 1.0 - h2o;
    s.mixing_ratios[kH2O] = h2o;
  }
  return s;
}

AtmosphericState profile_at(double altitude, std::optional<double> ground_h2o) {
  return AtmosphereModel::standard(ground_h2o).at(altitude);
}

LayerStack build_layers(double h_bottom, double h_top, double resolution,
                        const AtmosphereModel& model) {
  if (!(h_bottom < h_top) || !(resolution > 0.0)) {
    throw Error(ErrorCode::InvalidRange,
                fmt::format("cannot layer [{}, {}] m at {} m resolution", h_bottom, h_top,
                            resolution));
  }
  // Tolerate grids that are whole multiples up to rounding.
  const double ratio = (h_top - h_bottom) / resolution;
  auto count = static_cast<std::size_t>(std::ceil(ratio - 1e-9));
  count = std::max<std::size_t>(count, 1);

  LayerStack stack;
  stack.layers.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Layer layer;
    layer.lower = h_bottom + static_cast<double>(i) * resolution;
    layer.upper = i + 1 == count ? h_top : h_bottom + static_cast<double>(i + 1) * resolution;
    layer.state = model.at(0.5 * (layer.lower + layer.upper));
    stack.layers.push_back(std::move(layer));
  }
  return stack;
}

}  // namespace thz
