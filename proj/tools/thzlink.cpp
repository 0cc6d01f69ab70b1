// thzlink: batch front-end for THz link budgets.
//
//   thzlink run <config> [--out-dir DIR] [--dry-run] [--threads N]
//   thzlink sweep <config> --axis frequency|altitude|elevation
//                 --from A --to B --step S [--crossover] [...]
//
// Exit codes: 0 ok, 2 configuration error, 3 computation error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "thz/driver.hpp"
#include "thz/error.hpp"
#include "thz/scenario.hpp"

namespace {

constexpr int kConfigExit = 2;
constexpr int kComputeExit = 3;

std::optional<std::filesystem::path> default_cache_dir() {
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg != nullptr && *xdg != '\0') {
    return std::filesystem::path(xdg) / "thzlink";
  }
  if (const char* home = std::getenv("HOME"); home != nullptr && *home != '\0') {
    return std::filesystem::path(home) / ".cache" / "thzlink";
  }
  return std::nullopt;
}

struct Common {
  std::string config;
  std::string out_dir = "thzlink-out";
  bool dry_run = false;
  unsigned threads = 1;
  std::string cache_dir;
  bool no_cache = false;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("config", c.config, "Scenario file (key = value)")->required();
  cmd->add_option("--out-dir", c.out_dir, "Directory for CSV and summary output");
  cmd->add_flag("--dry-run", c.dry_run, "Validate and print the resolved scenario only");
  cmd->add_option("--threads", c.threads, "Worker threads for layer spectra")
      ->check(CLI::Range(1u, 1024u));
  cmd->add_option("--cache-dir", c.cache_dir, "Layer-spectrum cache directory");
  cmd->add_flag("--no-cache", c.no_cache, "Do not read or write the spectrum cache");
}

thz::EngineOptions engine_options(const Common& c) {
  thz::EngineOptions o;
  o.threads = c.threads;
  if (!c.no_cache) {
    o.cache_dir = c.cache_dir.empty() ? default_cache_dir()
                                      : std::optional<std::filesystem::path>(c.cache_dir);
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Terahertz atmospheric link budget simulator"};
  app.set_version_flag("--version", std::string(THZLINK_VERSION));
  app.require_subcommand(1);

  Common run_opts;
  CLI::App* run = app.add_subcommand("run", "Evaluate one scenario over its frequency grid");
  add_common(run, run_opts);

  Common sweep_opts;
  std::string axis;
  double from = 0.0, to = 0.0, step = 0.0;
  bool crossover = false;
  CLI::App* sweep = app.add_subcommand("sweep", "Sweep one scenario parameter");
  add_common(sweep, sweep_opts);
  sweep->add_option("--axis", axis, "frequency (GHz), altitude (m) or elevation (deg)")
      ->required()
      ->check(CLI::IsMember({"frequency", "altitude", "elevation"}));
  sweep->add_option("--from", from, "First axis value")->required();
  sweep->add_option("--to", to, "Last axis value")->required();
  sweep->add_option("--step", step, "Axis increment")->required();
  sweep->add_flag("--crossover", crossover,
                  "Also report the A2G/A2S path-loss crossover altitude per frequency");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kConfigExit;
  }

  const Common& c = run->parsed() ? run_opts : sweep_opts;
  thz::Scenario scenario;
  std::optional<thz::SweepRange> range;
  try {
    scenario = thz::load_scenario(c.config);
    if (sweep->parsed()) {
      range = thz::SweepRange{thz::parse_sweep_axis(axis), from, to, step};
      range->values();
      if (crossover && range->axis != thz::SweepAxis::Altitude) {
        throw thz::Error(thz::ErrorCode::ConfigError, "--crossover needs --axis altitude");
      }
    }
  } catch (const thz::Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return e.code() == thz::ErrorCode::ConfigError ? kConfigExit : kComputeExit;
  }

  if (c.dry_run) {
    std::cout << thz::describe(scenario);
    if (range) {
      std::cout << "sweep " << axis << " from " << from << " to " << to << " step " << step
                << " (" << range->values().size() << " points)"
                << (crossover ? ", with crossover report" : "") << '\n';
    }
    return 0;
  }

  try {
    thz::LinkEngine engine(scenario, engine_options(c));
    for (const auto& f : engine.catalog_failures()) {
      std::cerr << "catalog line " << f.line_number << ": " << f.message << '\n';
    }
    if (engine.catalog().empty()) std::cerr << "warning: catalog has no lines\n";
    if (run->parsed()) {
      std::cout << thz::run_scenario(scenario, engine, c.out_dir);
    } else {
      thz::run_sweep(scenario, engine, *range, crossover, c.out_dir, &std::cerr);
      std::cout << "wrote " << (std::filesystem::path(c.out_dir) / "sweep.csv").string() << '\n';
    }
  } catch (const thz::Error& e) {
    std::cerr << to_string(scenario.kind) << " scenario from " << c.config << ": "
              << thz::to_string(e.code()) << ": " << e.what() << '\n';
    return e.code() == thz::ErrorCode::ConfigError ? kConfigExit : kComputeExit;
  } catch (const std::exception& e) {
    std::cerr << to_string(scenario.kind) << " scenario from " << c.config << ": " << e.what()
              << '\n';
    return kComputeExit;
  }
  return 0;
}
