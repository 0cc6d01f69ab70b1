#include "thz/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "thz/cache.hpp"
#include "thz/constants.hpp"
#include "thz/error.hpp"

namespace thz {
namespace {

using constants::pi;

constexpr double kDeg = pi / 180.0;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct Location {
  std::string_view source;
  std::size_t line;
  std::string_view key;
};

[[noreturn]] void config_error(const Location& at, std::string_view what) {
  throw Error(ErrorCode::ConfigError,
              fmt::format("{}:{}: {}: {}", at.source, at.line, at.key, what));
}

double parse_number(std::string_view text, const Location& at) {
  double v = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || end != text.data() + text.size() || !std::isfinite(v)) {
    config_error(at, fmt::format("expected a number, got '{}'", text));
  }
  return v;
}

using Setter = std::function<void(Scenario&, std::string_view, const Location&)>;

struct KeySpec {
  std::string name;
  std::string unit;
  Setter set;
};

Setter number(double Scenario::*field, double scale = 1.0) {
  return [field, scale](Scenario& s, std::string_view v, const Location& at) {
    s.*field = parse_number(v, at) * scale;
  };
}

Setter optional_number(std::optional<double> Scenario::*field, double scale = 1.0) {
  return [field, scale](Scenario& s, std::string_view v, const Location& at) {
    s.*field = parse_number(v, at) * scale;
  };
}

Setter text(std::string Scenario::*field) {
  return [field](Scenario& s, std::string_view v, const Location&) { s.*field = std::string(v); };
}

const std::vector<KeySpec>& key_specs() {
  static const std::vector<KeySpec> specs = [] {
    std::vector<KeySpec> k;
    k.push_back({"kind", "A2S|S2A|E2A|A2E|E2S|S2E|A2A",
                 [](Scenario& s, std::string_view v, const Location& at) {
                   try {
                     s.kind = parse_scenario_kind(v);
                   } catch (const Error& e) {
                     config_error(at, e.what());
                   }
                 }});
    k.push_back({"airplane_altitude_m", "m", number(&Scenario::airplane_altitude)});
    k.push_back({"airplane2_altitude_m", "m", number(&Scenario::airplane2_altitude)});
    k.push_back({"satellite_altitude_m", "m", number(&Scenario::satellite_altitude)});
    k.push_back({"ground_altitude_m", "m", number(&Scenario::ground_altitude)});
    k.push_back({"central_angle_deg", "deg", number(&Scenario::central_angle, kDeg)});
    k.push_back({"elevation_deg", "deg", optional_number(&Scenario::elevation, kDeg)});
    k.push_back({"a2a_distance_m", "m", number(&Scenario::a2a_distance)});
    k.push_back({"airplane_dish_m", "m",
                 [](Scenario& s, std::string_view v, const Location& at) {
                   s.airplane_dish.diameter = parse_number(v, at);
                 }});
    k.push_back({"satellite_dish_m", "m",
                 [](Scenario& s, std::string_view v, const Location& at) {
                   s.satellite_dish.diameter = parse_number(v, at);
                 }});
    k.push_back({"ground_dish_m", "m",
                 [](Scenario& s, std::string_view v, const Location& at) {
                   s.ground_dish.diameter = parse_number(v, at);
                 }});
    k.push_back({"dish_efficiency", "1",
                 [](Scenario& s, std::string_view v, const Location& at) {
                   double e = parse_number(v, at);
                   s.airplane_dish.efficiency = e;
                   s.satellite_dish.efficiency = e;
                   s.ground_dish.efficiency = e;
                 }});
    k.push_back({"tx_power_mw", "mW",
                 [](Scenario& s, std::string_view v, const Location& at) {
                   s.transceiver.tx_power = parse_number(v, at) * 1e-3;
                 }});
    k.push_back({"bandwidth_ghz", "GHz",
                 [](Scenario& s, std::string_view v, const Location& at) {
                   s.transceiver.bandwidth = parse_number(v, at) * 1e9;
                 }});
    k.push_back({"center_frequency_ghz", "GHz",
                 [](Scenario& s, std::string_view v, const Location& at) {
                   s.transceiver.center_frequency = parse_number(v, at) * 1e9;
                 }});
    k.push_back({"noise_figure_db", "dB",
                 [](Scenario& s, std::string_view v, const Location& at) {
                   s.transceiver.noise_figure = parse_number(v, at);
                 }});
    k.push_back({"rx_temperature_k", "K",
                 [](Scenario& s, std::string_view v, const Location& at) {
                   s.transceiver.rx_temperature = parse_number(v, at);
                 }});
    k.push_back({"rain_rate_mm_h", "mm/h", number(&Scenario::rain_rate)});
    k.push_back({"rain_base_m", "m", number(&Scenario::rain_base)});
    k.push_back({"rain_top_m", "m", number(&Scenario::rain_top)});
    k.push_back({"cloud_density_g_m3", "g/m^3", number(&Scenario::cloud_density)});
    k.push_back({"cloud_base_m", "m", number(&Scenario::cloud_base)});
    k.push_back({"cloud_thickness_m", "m", number(&Scenario::cloud_thickness)});
    k.push_back({"layer_resolution_m", "m", number(&Scenario::layer_resolution)});
    k.push_back({"atmosphere_top_m", "m", number(&Scenario::atmosphere_top)});
    k.push_back({"ground_h2o_vmr", "1", optional_number(&Scenario::ground_h2o)});
    k.push_back({"atmosphere_file", "path", text(&Scenario::atmosphere_file)});
    k.push_back({"catalog_file", "path", text(&Scenario::catalog_file)});
    k.push_back({"f_min_ghz", "GHz", number(&Scenario::f_min, 1e9)});
    k.push_back({"f_max_ghz", "GHz", number(&Scenario::f_max, 1e9)});
    k.push_back({"f_step_ghz", "GHz", number(&Scenario::f_step, 1e9)});
    k.push_back({"capacity_step_mhz", "MHz", number(&Scenario::capacity_step, 1e6)});
    k.push_back({"wing_cutoff_ghz", "GHz", number(&Scenario::wing_cutoff, 1e9)});
    k.push_back({"ground_elevation_deg", "deg", number(&Scenario::ground_elevation, kDeg)});
    k.push_back({"crossover_frequencies_ghz", "GHz, comma separated",
                 [](Scenario& s, std::string_view v, const Location& at) {
                   s.crossover_frequencies.clear();
                   std::size_t start = 0;
                   while (start <= v.size()) {
                     std::size_t comma = v.find(',', start);
                     if (comma == std::string_view::npos) comma = v.size();
                     s.crossover_frequencies.push_back(
                         parse_number(trim(v.substr(start, comma - start)), at) * 1e9);
                     start = comma + 1;
                   }
                 }});
    return k;
  }();
  return specs;
}

void check(bool ok, const std::map<std::string, std::size_t>& lines, std::string_view source,
           std::string_view key, std::string_view what) {
  if (ok) return;
  auto it = lines.find(std::string(key));
  const std::size_t line = it == lines.end() ? 0 : it->second;
  config_error(Location{source, line, key}, what);
}

void validate(const Scenario& s, const std::map<std::string, std::size_t>& lines,
              std::string_view source) {
  auto positive = [&](double v, std::string_view key) {
    check(v > 0.0, lines, source, key, fmt::format("must be positive (got {})", v));
  };
  auto non_negative = [&](double v, std::string_view key) {
    check(v >= 0.0, lines, source, key, fmt::format("must be non-negative (got {})", v));
  };

  positive(s.transceiver.tx_power, "tx_power_mw");
  positive(s.transceiver.bandwidth, "bandwidth_ghz");
  positive(s.transceiver.center_frequency, "center_frequency_ghz");
  positive(s.transceiver.rx_temperature, "rx_temperature_k");
  positive(s.airplane_dish.diameter, "airplane_dish_m");
  positive(s.satellite_dish.diameter, "satellite_dish_m");
  positive(s.ground_dish.diameter, "ground_dish_m");
  check(s.airplane_dish.efficiency > 0.0 && s.airplane_dish.efficiency <= 1.0, lines, source,
        "dish_efficiency", "must lie in (0, 1]");
  non_negative(s.rain_rate, "rain_rate_mm_h");
  non_negative(s.cloud_density, "cloud_density_g_m3");
  non_negative(s.cloud_thickness, "cloud_thickness_m");
  non_negative(s.rain_base, "rain_base_m");
  check(s.rain_top >= s.rain_base, lines, source, "rain_top_m", "must not lie below rain_base_m");
  non_negative(s.cloud_base, "cloud_base_m");
  positive(s.layer_resolution, "layer_resolution_m");
  positive(s.atmosphere_top, "atmosphere_top_m");
  positive(s.f_min, "f_min_ghz");
  positive(s.f_step, "f_step_ghz");
  check(s.f_max > s.f_min, lines, source, "f_max_ghz", "frequency range is empty");
  positive(s.capacity_step, "capacity_step_mhz");
  positive(s.wing_cutoff, "wing_cutoff_ghz");
  if (s.ground_h2o) {
    check(*s.ground_h2o >= 0.0 && *s.ground_h2o < 1.0, lines, source, "ground_h2o_vmr",
          "must lie in [0, 1)");
  }
  non_negative(s.ground_altitude, "ground_altitude_m");
  non_negative(s.airplane_altitude, "airplane_altitude_m");
  non_negative(s.central_angle, "central_angle_deg");
  check(s.central_angle < 0.5 * pi, lines, source, "central_angle_deg", "must be below 90");
  if (s.elevation) {
    check(*s.elevation > 0.0 && *s.elevation <= 0.5 * pi, lines, source, "elevation_deg",
          "must lie in (0, 90]");
  }
  check(s.ground_elevation > 0.0 && s.ground_elevation <= 0.5 * pi, lines, source,
        "ground_elevation_deg", "must lie in (0, 90]");
  for (double f : s.crossover_frequencies) positive(f, "crossover_frequencies_ghz");

  switch (s.kind) {
    case ScenarioKind::E2A:
    case ScenarioKind::A2E:
      check(s.airplane_altitude > s.ground_altitude, lines, source, "airplane_altitude_m",
            "airplane must fly above the ground terminal");
      break;
    case ScenarioKind::A2S:
    case ScenarioKind::S2A:
      check(s.satellite_altitude > s.airplane_altitude, lines, source, "satellite_altitude_m",
            "satellite must be above the airplane");
      break;
    case ScenarioKind::E2S:
    case ScenarioKind::S2E:
      check(s.satellite_altitude > s.ground_altitude, lines, source, "satellite_altitude_m",
            "satellite must be above the ground terminal");
      break;
    case ScenarioKind::A2A:
      positive(s.a2a_distance, "a2a_distance_m");
      break;
  }
}

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::A2S: return "A2S";
    case ScenarioKind::S2A: return "S2A";
    case ScenarioKind::E2A: return "E2A";
    case ScenarioKind::A2E: return "A2E";
    case ScenarioKind::E2S: return "E2S";
    case ScenarioKind::S2E: return "S2E";
    case ScenarioKind::A2A: return "A2A";
  }
  return "?";
}

ScenarioKind parse_scenario_kind(std::string_view text) {
  for (auto k : {ScenarioKind::A2S, ScenarioKind::S2A, ScenarioKind::E2A, ScenarioKind::A2E,
                 ScenarioKind::E2S, ScenarioKind::S2E, ScenarioKind::A2A}) {
    if (text == to_string(k)) return k;
  }
  throw Error(ErrorCode::ConfigError, fmt::format("unknown scenario kind '{}'", text));
}

ScenarioKind reversed(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::A2S: return ScenarioKind::S2A;
    case ScenarioKind::S2A: return ScenarioKind::A2S;
    case ScenarioKind::E2A: return ScenarioKind::A2E;
    case ScenarioKind::A2E: return ScenarioKind::E2A;
    case ScenarioKind::E2S: return ScenarioKind::S2E;
    case ScenarioKind::S2E: return ScenarioKind::E2S;
    case ScenarioKind::A2A: return ScenarioKind::A2A;
  }
  return kind;
}

const std::vector<std::pair<std::string, std::string>>& config_keys() {
  static const std::vector<std::pair<std::string, std::string>> keys = [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& k : key_specs()) out.emplace_back(k.name, k.unit);
    return out;
  }();
  return keys;
}

Scenario parse_scenario(std::string_view text, std::string_view source) {
  Scenario s;
  std::map<std::string, std::size_t> seen;
  std::size_t pos = 0;
  std::size_t line_number = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_number;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::ConfigError,
                  fmt::format("{}:{}: expected 'key = value', got '{}'", source, line_number, line));
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const Location at{source, line_number, key};

    auto spec = std::find_if(key_specs().begin(), key_specs().end(),
                             [&](const KeySpec& k) { return k.name == key; });
    if (spec == key_specs().end()) config_error(at, "unknown key");
    if (!seen.emplace(std::string(key), line_number).second) config_error(at, "duplicate key");
    spec->set(s, value, at);
  }
  if (!seen.contains("kind")) {
    throw Error(ErrorCode::ConfigError, fmt::format("{}: missing required key 'kind'", source));
  }
  validate(s, seen, source);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::ConfigError, "cannot open config " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  Scenario s = parse_scenario(text.str(), path.string());
  // Relative data paths are taken relative to the config file.
  auto rebase = [&](std::string& p) {
    if (!p.empty() && std::filesystem::path(p).is_relative()) {
      p = (path.parent_path() / p).lexically_normal().string();
    }
  };
  rebase(s.atmosphere_file);
  rebase(s.catalog_file);
  return s;
}

Terminals resolve_terminals(const Scenario& s) {
  auto altitude = [&](char who) {
    switch (who) {
      case 'A': return s.airplane_altitude;
      case 'S': return s.satellite_altitude;
      default: return s.ground_altitude;
    }
  };
  auto dish = [&](char who) {
    switch (who) {
      case 'A': return s.airplane_dish;
      case 'S': return s.satellite_dish;
      default: return s.ground_dish;
    }
  };
  const std::string_view name = to_string(s.kind);
  Terminals t{altitude(name[0]), altitude(name[2]), dish(name[0]), dish(name[2]), s.central_angle};
  if (s.kind == ScenarioKind::A2A) {
    t.rx_altitude = s.airplane2_altitude >= 0.0 ? s.airplane2_altitude : s.airplane_altitude;
    t.rho = s.a2a_distance / constants::earth_radius;
  } else if (s.elevation) {
    t.rho = central_angle_for_elevation(std::min(t.tx_altitude, t.rx_altitude),
                                        std::max(t.tx_altitude, t.rx_altitude), *s.elevation);
  }
  return t;
}

std::string describe(const Scenario& s) {
  const Terminals t = resolve_terminals(s);
  const LinkEndpoints ep = make_endpoints(t.tx_altitude, t.rx_altitude, t.rho);
  std::string out;
  auto line = [&](std::string_view k, const std::string& v) {
    out += fmt::format("{:<24} {}\n", k, v);
  };
  line("kind", std::string(to_string(s.kind)));
  line("tx altitude", fmt::format("{} m", t.tx_altitude));
  line("rx altitude", fmt::format("{} m", t.rx_altitude));
  line("central angle", fmt::format("{:.6f} deg", t.rho / kDeg));
  line("slant range", fmt::format("{:.3f} km", slant_range(ep) / 1e3));
  if (slant_range(ep) > 0.0) {
    line("elevation", fmt::format("{:.6f} deg", elevation_angle(ep) / kDeg));
  }
  line("tx dish", fmt::format("{} m, efficiency {}", t.tx_dish.diameter, t.tx_dish.efficiency));
  line("rx dish", fmt::format("{} m, efficiency {}", t.rx_dish.diameter, t.rx_dish.efficiency));
  line("tx power", fmt::format("{} W", s.transceiver.tx_power));
  line("band", fmt::format("{} GHz wide at {} GHz", s.transceiver.bandwidth / 1e9,
                           s.transceiver.center_frequency / 1e9));
  line("noise figure", fmt::format("{} dB at {} K", s.transceiver.noise_figure,
                                   s.transceiver.rx_temperature));
  line("rain", fmt::format("{} mm/h, {}-{} m", s.rain_rate, s.rain_base, s.rain_top));
  line("cloud", fmt::format("{} g/m^3, {}-{} m", s.cloud_density, s.cloud_base,
                            s.cloud_base + s.cloud_thickness));
  line("atmosphere", fmt::format("{} m layers to {} m, ground h2o {}", s.layer_resolution,
                                 s.atmosphere_top, s.ground_h2o.value_or(kDefaultGroundH2O)));
  if (!s.atmosphere_file.empty()) line("atmosphere file", s.atmosphere_file);
  line("catalog", s.catalog_file.empty() ? std::string("bundled") : s.catalog_file);
  line("grid", fmt::format("{}-{} GHz step {} GHz", s.f_min / 1e9, s.f_max / 1e9, s.f_step / 1e9));
  line("capacity step", fmt::format("{} MHz", s.capacity_step / 1e6));
  line("wing cutoff", fmt::format("{} GHz", s.wing_cutoff / 1e9));
  return out;
}

Eigen::ArrayXd make_grid(double f_min, double f_max, double step) {
  if (!(f_max > f_min) || !(step > 0.0) || !(f_min > 0.0)) {
    throw Error(ErrorCode::InvalidRange,
                fmt::format("invalid grid {}-{} Hz step {} Hz", f_min, f_max, step));
  }
  const auto n = static_cast<Eigen::Index>(std::floor((f_max - f_min) / step + 1e-9)) + 1;
  Eigen::ArrayXd grid(n);
  for (Eigen::Index i = 0; i < n; ++i) grid[i] = f_min + static_cast<double>(i) * step;
  return grid;
}

std::optional<double> crossover_altitude(const std::vector<double>& altitudes,
                                         const std::vector<double>& loss_a_db,
                                         const std::vector<double>& loss_b_db) {
  if (altitudes.size() != loss_a_db.size() || altitudes.size() != loss_b_db.size()) {
    throw Error(ErrorCode::MisalignedLayers, "crossover inputs differ in length");
  }
  for (std::size_t i = 1; i < altitudes.size(); ++i) {
    const double d0 = loss_a_db[i - 1] - loss_b_db[i - 1];
    const double d1 = loss_a_db[i] - loss_b_db[i];
    if (d0 == 0.0) return altitudes[i - 1];
    if ((d0 < 0.0) != (d1 < 0.0)) {
      return altitudes[i - 1] + (altitudes[i] - altitudes[i - 1]) * d0 / (d0 - d1);
    }
  }
  if (!altitudes.empty() && loss_a_db.back() == loss_b_db.back()) return altitudes.back();
  return std::nullopt;
}

struct LinkEngine::GridSpectra {
  Eigen::ArrayXd grid;
  LayerSpectra spectra;
  std::vector<bool> done;
};

LinkEngine::LinkEngine(const Scenario& base, EngineOptions options)
    : options_(std::move(options)),
      model_(base.atmosphere_file.empty()
                 ? AtmosphereModel::standard(base.ground_h2o)
                 : AtmosphereModel::from_file(base.atmosphere_file, base.ground_h2o)) {
  absorption_.wing_cutoff = base.wing_cutoff;

  CatalogFilter filter;
  filter.nu_min = 0.0;
  filter.nu_max = 1e7;
  CatalogLoad load = base.catalog_file.empty() ? load_bundled_catalog(filter)
                                               : load_catalog(base.catalog_file, filter);
  catalog_ = std::move(load.catalog);
  failures_ = std::move(load.failures);

  const double top = std::min(base.atmosphere_top, model_.top());
  layers_ = build_layers(0.0, top, base.layer_resolution, model_);
  if (options_.cache_dir) cache_ = std::make_unique<SpectrumCache>(*options_.cache_dir);
}

LinkEngine::~LinkEngine() = default;

const LayerSpectra& LinkEngine::spectra_for(const Eigen::ArrayXd& grid,
                                            const std::vector<bool>& needed) {
  GridSpectra* entry = nullptr;
  for (auto& m : memo_) {
    if (m->grid.size() == grid.size() && (m->grid == grid).all()) {
      entry = m.get();
      break;
    }
  }
  if (entry == nullptr) {
    constexpr std::size_t kMaxGrids = 4;
    if (memo_.size() >= kMaxGrids) memo_.erase(memo_.begin());
    auto fresh = std::make_unique<GridSpectra>();
    fresh->grid = grid;
    fresh->spectra.grid = grid;
    fresh->spectra.kappa = Eigen::ArrayXXd::Zero(static_cast<Eigen::Index>(layers_.size()),
                                                 grid.size());
    fresh->done.assign(layers_.size(), false);
    memo_.push_back(std::move(fresh));
    entry = memo_.back().get();
  }

  std::vector<bool> missing(layers_.size(), false);
  bool any = false;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    if (needed[i] && !entry->done[i]) {
      missing[i] = true;
      any = true;
    }
  }
  if (any) {
    SpectraOptions so;
    so.absorption = absorption_;
    so.threads = options_.threads;
    so.cache = cache_.get();
    so.needed = missing;
    LayerSpectra fresh = compute_layer_spectra(catalog_, layers_, grid, so);
    for (std::size_t i = 0; i < layers_.size(); ++i) {
      if (!missing[i]) continue;
      const auto r = static_cast<Eigen::Index>(i);
      entry->spectra.kappa.row(r) = fresh.kappa.row(r);
      entry->done[i] = true;
    }
  }
  return entry->spectra;
}

ScenarioResult LinkEngine::evaluate(const Scenario& s, const Eigen::ArrayXd& grid) {
  const Terminals t = resolve_terminals(s);
  ScenarioResult r;
  r.grid = grid;
  r.endpoints = make_endpoints(t.tx_altitude, t.rx_altitude, t.rho);
  r.geometry = path_geometry(r.endpoints, layers_);
  const auto& ep = r.endpoints;
  const auto& g = r.geometry;

  const LayerSpectra& spectra = spectra_for(grid, layers_touched(g.segments, layers_.size()));
  const Eigen::ArrayXd tau = transmittance(g.segments, spectra);

  WeatherConfig weather;
  if (s.rain_rate > 0.0) {
    r.rain_path = path_between_altitudes(ep.h_low, g.psi, s.rain_base, s.rain_top, g.r_as);
    weather.rain_rate = s.rain_rate;
    weather.rain_path = r.rain_path;
  }
  if (s.cloud_density > 0.0) {
    const double top = s.cloud_base + s.cloud_thickness;
    r.cloud_path = path_between_altitudes(ep.h_low, g.psi, s.cloud_base, top, g.r_as);
    weather.cloud_density = s.cloud_density;
    weather.cloud_path = r.cloud_path;
    weather.cloud_temperature = model_.at(std::min(0.5 * (s.cloud_base + top), model_.top()))
                                    .temperature;
  }
  r.path_loss = total_path_loss(grid, g.r_as, tau, t.tx_dish, t.rx_dish, weather);

  // Emission seen by the receiver, nearest layer first.
  std::vector<PathSegment> from_rx = g.segments;
  if (t.rx_altitude > t.tx_altitude) std::reverse(from_rx.begin(), from_rx.end());
  Eigen::ArrayXd temperatures(static_cast<Eigen::Index>(from_rx.size()));
  Eigen::ArrayXXd layer_tau(static_cast<Eigen::Index>(from_rx.size()), grid.size());
  for (std::size_t i = 0; i < from_rx.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    temperatures[row] = layers_.layers[from_rx[i].layer].state.temperature;
    layer_tau.row(row) =
        (-spectra.kappa.row(static_cast<Eigen::Index>(from_rx[i].layer)) * from_rx[i].length)
            .exp();
  }
  r.brightness = brightness_temperature_planck(grid, temperatures, layer_tau);
  r.noise_psd = total_noise_psd(grid, r.brightness, s.transceiver);
  r.snr = snr(r.path_loss.total, r.noise_psd, s.transceiver);
  return r;
}

CapacityReport LinkEngine::capacities(const Scenario& s, const ScenarioResult& survey) {
  CapacityReport rep;
  const double w = s.transceiver.bandwidth;
  auto band = [&](double center) {
    const double lo = center - 0.5 * w;
    const double hi = center + 0.5 * w;
    const Eigen::ArrayXd grid = make_grid(lo, hi, std::min(s.capacity_step, w));
    Eigen::ArrayXd fine = grid;
    if (fine[fine.size() - 1] < hi) {
      fine.conservativeResize(grid.size() + 1);
      fine[grid.size()] = hi;
    }
    ScenarioResult r = evaluate(s, fine);
    return capacity(r.grid, r.snr);
  };

  rep.band_capacity = band(s.transceiver.center_frequency);
  const double span = survey.grid[survey.grid.size() - 1] - survey.grid[0];
  if (span >= w) {
    rep.best = best_window(survey.grid, survey.snr, w);
    rep.best_refined = band(rep.best.center);
  }
  return rep;
}

AbsorptionSpectrum LinkEngine::absorption_at(double altitude, const Eigen::ArrayXd& grid) const {
  return absorption_coefficient(catalog_, model_.at(altitude), grid, absorption_);
}

}  // namespace thz
