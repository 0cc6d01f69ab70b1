#include "thz/driver.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include <fmt/format.h>

#include "thz/csv.hpp"
#include "thz/error.hpp"

namespace thz {
namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error(ErrorCode::IoFailure, "failed writing " + path.string());
}

void prepare_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::IoFailure,
                fmt::format("cannot create output directory {}: {}", dir.string(), ec.message()));
  }
}

std::string db(double linear) { return format_number(10.0 * std::log10(linear)); }

Eigen::ArrayXd single(double f) { return Eigen::ArrayXd::Constant(1, f); }

}  // namespace

SweepAxis parse_sweep_axis(std::string_view text) {
  if (text == "frequency") return SweepAxis::Frequency;
  if (text == "altitude") return SweepAxis::Altitude;
  if (text == "elevation") return SweepAxis::Elevation;
  throw Error(ErrorCode::ConfigError, fmt::format("unknown sweep axis '{}'", text));
}

std::vector<double> SweepRange::values() const {
  if (!(step > 0.0) || !(to >= from) || !std::isfinite(from) || !std::isfinite(to)) {
    throw Error(ErrorCode::ConfigError,
                fmt::format("sweep range {} to {} step {} is empty", from, to, step));
  }
  std::vector<double> v;
  const auto n = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
  for (std::size_t i = 0; i < n; ++i) v.push_back(from + static_cast<double>(i) * step);
  return v;
}

std::string run_scenario(const Scenario& s, LinkEngine& engine,
                         const std::filesystem::path& out_dir) {
  prepare_dir(out_dir);
  const std::string& sha = engine.catalog().sha256();
  const Eigen::ArrayXd grid = make_grid(s.f_min, s.f_max, s.f_step);
  const ScenarioResult r = engine.evaluate(s, grid);
  const CapacityReport cap = engine.capacities(s, r);

  {
    const auto path = out_dir / "absorption.csv";
    auto out = open_output(path);
    const AbsorptionSpectrum a = engine.absorption_at(r.endpoints.h_low, grid);
    write_provenance(out, sha);
    out << "frequency_hz,kappa_per_m\n";
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
      out << format_number(grid[i]) << ',' << format_number(a.kappa[i]) << '\n';
    }
    finish(out, path);
  }
  {
    const auto path = out_dir / "path_loss.csv";
    auto out = open_output(path);
    write_provenance(out, sha);
    out << "frequency_hz,path_loss_db,tau,fspl_db,rain_db,cloud_db\n";
    const PathLoss& pl = r.path_loss;
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
      out << format_number(grid[i]) << ',' << db(pl.total[i]) << ',' << format_number(pl.tau[i])
          << ',' << db(1.0 / pl.spreading[i]) << ',' << format_number(pl.rain_db[i]) << ','
          << format_number(pl.cloud_db[i]) << '\n';
    }
    finish(out, path);
  }
  {
    const auto path = out_dir / "snr.csv";
    auto out = open_output(path);
    write_provenance(out, sha);
    out << "frequency_hz,snr_db,noise_psd_dbw_hz\n";
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
      out << format_number(grid[i]) << ',' << db(r.snr[i]) << ',' << db(r.noise_psd[i]) << '\n';
    }
    finish(out, path);
  }
  {
    const auto path = out_dir / "capacity.csv";
    auto out = open_output(path);
    write_provenance(out, sha);
    out << "window,center_frequency_hz,bandwidth_hz,capacity_bps\n";
    out << "configured," << format_number(s.transceiver.center_frequency) << ','
        << format_number(s.transceiver.bandwidth) << ',' << format_number(cap.band_capacity)
        << '\n';
    if (cap.best.center > 0.0) {
      out << "best," << format_number(cap.best.center) << ','
          << format_number(s.transceiver.bandwidth) << ',' << format_number(cap.best_refined)
          << '\n';
    }
    finish(out, path);
  }

  std::string summary = fmt::format("thzlink {} catalog_sha256={}\n\n", THZLINK_VERSION, sha);
  summary += describe(s);
  summary += fmt::format("{:<24} {} lines ({} rejected records)\n", "catalog lines",
                         engine.catalog().size(), engine.catalog_failures().size());
  summary += fmt::format("{:<24} {:.3f} km\n", "in-atmosphere path",
                         r.geometry.in_atmosphere_length() / 1e3);
  if (r.rain_path > 0.0) summary += fmt::format("{:<24} {:.1f} m\n", "rain path", r.rain_path);
  if (r.cloud_path > 0.0) summary += fmt::format("{:<24} {:.1f} m\n", "cloud path", r.cloud_path);
  if (r.path_loss.rain_extrapolated) summary += "warning: rain model used above 1000 GHz\n";
  if (r.path_loss.cloud_extrapolated) summary += "warning: cloud model used above 200 GHz\n";

  Eigen::Index best_pl = 0;
  r.path_loss.total.minCoeff(&best_pl);
  summary += fmt::format("{:<24} {:.2f} dB at {:.3f} GHz\n", "minimum path loss",
                         10.0 * std::log10(r.path_loss.total[best_pl]), grid[best_pl] / 1e9);
  summary += fmt::format("{:<24} {:.3f} Gbit/s\n", "capacity (configured)",
                         cap.band_capacity / 1e9);
  if (cap.best.center > 0.0) {
    summary += fmt::format("{:<24} {:.3f} Gbit/s centred at {:.3f} GHz\n", "capacity (best)",
                           cap.best_refined / 1e9, cap.best.center / 1e9);
  }
  const double bpsk = modulation_threshold(Modulation::Bpsk, 1e-6);
  const double qam = modulation_threshold(Modulation::Qam16, 1e-6);
  const auto above = [&](double threshold) { return (r.snr >= threshold).count(); };
  summary += fmt::format("{:<24} {:.2f} dB, met at {} of {} grid points\n", "BPSK @ BEP 1e-6",
                         10.0 * std::log10(bpsk), above(bpsk), grid.size());
  summary += fmt::format("{:<24} {:.2f} dB, met at {} of {} grid points\n", "16-QAM @ BEP 1e-6",
                         10.0 * std::log10(qam), above(qam), grid.size());

  const auto path = out_dir / "summary.txt";
  auto out = open_output(path);
  out << summary;
  finish(out, path);
  return summary;
}

CrossoverCurves crossover_curves(const Scenario& s, LinkEngine& engine, double f,
                                 const std::vector<double>& altitudes) {
  CrossoverCurves c;
  Scenario a2g = s;
  a2g.kind = ScenarioKind::A2E;
  a2g.elevation = s.ground_elevation;
  Scenario a2s = s;
  a2s.kind = ScenarioKind::A2S;
  a2s.elevation.reset();
  a2s.central_angle = 0.0;
  for (double h : altitudes) {
    if (!(h > s.ground_altitude) || !(h < s.satellite_altitude)) {
      throw Error(ErrorCode::ConfigError,
                  fmt::format("crossover altitude {} m must lie between the ground terminal and "
                              "the satellite",
                              h));
    }
    a2g.airplane_altitude = h;
    a2s.airplane_altitude = h;
    c.altitudes.push_back(h);
    c.a2g_db.push_back(10.0 * std::log10(engine.evaluate(a2g, single(f)).path_loss.total[0]));
    c.a2s_db.push_back(10.0 * std::log10(engine.evaluate(a2s, single(f)).path_loss.total[0]));
  }
  c.crossover = crossover_altitude(c.altitudes, c.a2g_db, c.a2s_db);
  return c;
}

void run_sweep(const Scenario& s, LinkEngine& engine, const SweepRange& range, bool crossover,
               const std::filesystem::path& out_dir, std::ostream* progress) {
  const std::vector<double> values = range.values();
  if (crossover && range.axis != SweepAxis::Altitude) {
    throw Error(ErrorCode::ConfigError, "--crossover needs the altitude axis");
  }
  const bool ground_link = s.kind == ScenarioKind::E2A || s.kind == ScenarioKind::A2E;
  const bool satellite_link = s.kind == ScenarioKind::A2S || s.kind == ScenarioKind::S2A;
  if (range.axis == SweepAxis::Altitude) {
    if (!(s.kind == ScenarioKind::A2A || ground_link || satellite_link)) {
      throw Error(ErrorCode::ConfigError, "altitude sweeps need an airplane terminal");
    }
    if (ground_link && !(values.front() > s.ground_altitude)) {
      throw Error(ErrorCode::ConfigError, "altitude sweep must stay above the ground terminal");
    }
    if (satellite_link && !(values.back() < s.satellite_altitude)) {
      throw Error(ErrorCode::ConfigError, "altitude sweep must stay below the satellite");
    }
    if (values.front() < 0.0) {
      throw Error(ErrorCode::ConfigError, "altitude sweep starts below sea level");
    }
  }
  if (range.axis == SweepAxis::Elevation) {
    if (s.kind == ScenarioKind::A2A) {
      throw Error(ErrorCode::ConfigError, "A2A links have no elevation axis");
    }
    if (!(values.front() > 0.0) || values.back() > 90.0) {
      throw Error(ErrorCode::ConfigError, "elevation sweep must lie in (0, 90] degrees");
    }
  }
  if (range.axis == SweepAxis::Frequency) {
    const double half = 0.5 * s.transceiver.bandwidth;
    if (!(values.front() * 1e9 - half > 0.0)) {
      throw Error(ErrorCode::ConfigError, "frequency sweep reaches non-positive frequencies");
    }
  }

  prepare_dir(out_dir);
  const std::string& sha = engine.catalog().sha256();
  {
    const auto path = out_dir / "sweep.csv";
    auto out = open_output(path);
    write_provenance(out, sha);
    out << "axis_value,frequency_hz,metric,value\n";
    const Eigen::ArrayXd grid = make_grid(s.f_min, s.f_max, s.f_step);

    for (double v : values) {
      Scenario point = s;
      const std::string axis_value = format_number(v);
      if (range.axis == SweepAxis::Frequency) {
        point.transceiver.center_frequency = v * 1e9;
        const ScenarioResult r = engine.evaluate(point, single(v * 1e9));
        const double c = engine.capacities(point, r).band_capacity;
        const std::string f = format_number(v * 1e9);
        out << axis_value << ',' << f << ",path_loss_db," << db(r.path_loss.total[0]) << '\n';
        out << axis_value << ',' << f << ",snr_db," << db(r.snr[0]) << '\n';
        out << axis_value << ',' << f << ",capacity_bps," << format_number(c) << '\n';
      } else {
        if (range.axis == SweepAxis::Altitude) {
          point.airplane_altitude = v;
          if (point.kind == ScenarioKind::A2A) point.airplane2_altitude = v;
        } else {
          point.elevation = v * constants::pi / 180.0;
        }
        const ScenarioResult r = engine.evaluate(point, grid);
        for (Eigen::Index i = 0; i < grid.size(); ++i) {
          const std::string f = format_number(grid[i]);
          out << axis_value << ',' << f << ",path_loss_db," << db(r.path_loss.total[i]) << '\n';
          out << axis_value << ',' << f << ",snr_db," << db(r.snr[i]) << '\n';
        }
        const double c = engine.capacities(point, r).band_capacity;
        out << axis_value << ',' << format_number(point.transceiver.center_frequency)
            << ",capacity_bps," << format_number(c) << '\n';
      }
      if (progress != nullptr) *progress << "sweep point " << axis_value << " done\n";
    }
    finish(out, path);
  }

  if (crossover) {
    const auto path = out_dir / "crossover.csv";
    auto out = open_output(path);
    write_provenance(out, sha);
    out << "frequency_hz,crossover_altitude_m\n";
    for (double f : s.crossover_frequencies) {
      const CrossoverCurves c = crossover_curves(s, engine, f, values);
      out << format_number(f) << ','
          << (c.crossover ? format_number(*c.crossover) : std::string("nan")) << '\n';
    }
    finish(out, path);
  }
}

}  // namespace thz
