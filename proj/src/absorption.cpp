#include "thz/absorption.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "thz/constants.hpp"
#include "thz/faddeeva.hpp"

namespace thz {
namespace {

using namespace constants;

// Second radiation constant hc/k in cm K, applied to wavenumbers.
constexpr double kC2 = 100.0 * planck * speed_of_light / boltzmann;

const double kSqrtLn2 = std::sqrt(std::numbers::ln2);
const double kSqrtLn2OverPi = std::sqrt(std::numbers::ln2 / pi);

double abundance_factor(const SpectralLine& line, const AbsorptionOptions& options) {
  if (!options.intensities_include_abundance) return line.abundance;
  const IsotopologueInfo* iso = find_isotopologue(line.molecule_id, line.isotopologue_id);
  return iso == nullptr ? 1.0 : line.abundance / iso->abundance;
}

}  // namespace

double number_density(double pressure, double temperature, double mu) {
  return pressure * mu / (boltzmann * temperature);
}

double line_center(const SpectralLine& line, double pressure) {
  return wavenumber_to_frequency(line.nu0 + line.delta_air * pressure / reference_pressure);
}

double lorentz_halfwidth(const SpectralLine& line, double pressure, double temperature,
                         double mu) {
  const double gamma = (1.0 - mu) * line.gamma_air + mu * line.gamma_self;
  return wavenumber_to_frequency(gamma * (pressure / reference_pressure) *
                                 std::pow(reference_temperature / temperature, line.n_air));
}

double doppler_halfwidth(const SpectralLine& line, double temperature, double pressure) {
  const IsotopologueInfo* iso = find_isotopologue(line.molecule_id, line.isotopologue_id);
  if (iso == nullptr) {
    throw Error(ErrorCode::UnknownSpeciesMass,
                fmt::format("no mass for molecule {} isotopologue {}", line.molecule_id,
                            line.isotopologue_id));
  }
  const double mass = iso->mass_amu * atomic_mass_unit;
  return line_center(line, pressure) / speed_of_light *
         std::sqrt(2.0 * std::numbers::ln2 * boltzmann * temperature / mass);
}

double line_intensity(const SpectralLine& line, double temperature, double center) {
  const double t0 = reference_temperature;
  const double q_ratio = partition_function(line.molecule_id, t0) /
                         partition_function(line.molecule_id, temperature);
  const double boltzmann_ratio = std::exp(-kC2 * line.e_lower * (1.0 / temperature - 1.0 / t0));
  const double nu_c = frequency_to_wavenumber(center);
  const double stimulated =
      -std::expm1(-kC2 * nu_c / temperature) / -std::expm1(-kC2 * nu_c / t0);
  return line.intensity * q_ratio * boltzmann_ratio * stimulated;
}

double line_intensity(const SpectralLine& line, double temperature) {
  return line_intensity(line, temperature, wavenumber_to_frequency(line.nu0));
}

double lorentz_shape(double f, double center, double alpha_l) {
  const double d = f - center;
  return alpha_l / (pi * (d * d + alpha_l * alpha_l));
}

double van_vleck_weisskopf_shape(double f, double center, double alpha_l) {
  const double r = f / center;
  return r * r * (lorentz_shape(f, center, alpha_l) + lorentz_shape(f, -center, alpha_l));
}

double van_vleck_huber_shape(double f, double center, double alpha_l, double temperature) {
  const double a = planck / (2.0 * boltzmann * temperature);
  const double prefactor = f * std::tanh(a * f) / (center * std::tanh(a * center));
  return prefactor * (lorentz_shape(f, center, alpha_l) + lorentz_shape(f, -center, alpha_l));
}

double doppler_shape(double f, double center, double alpha_d) {
  const double d = (f - center) / alpha_d;
  return kSqrtLn2OverPi / alpha_d * std::exp(-d * d * std::numbers::ln2);
}

double voigt_shape(double f, double center, double alpha_l, double alpha_d) {
  const std::complex<double> z(kSqrtLn2 * (f - center) / alpha_d, kSqrtLn2 * alpha_l / alpha_d);
  return kSqrtLn2OverPi / alpha_d * faddeeva(z).real();
}

LineShapeKind select_line_shape(double alpha_l, double alpha_d) {
  if (alpha_l > 5.0 * alpha_d) return LineShapeKind::VanVleckHuber;
  if (alpha_d > 5.0 * alpha_l) return LineShapeKind::Doppler;
  return LineShapeKind::Voigt;
}

double line_shape(const SpectralLine& line, double f, double pressure, double temperature,
                  double mu) {
  const double fc = line_center(line, pressure);
  const double al = lorentz_halfwidth(line, pressure, temperature, mu);
  const double ad = doppler_halfwidth(line, temperature, pressure);
  switch (select_line_shape(al, ad)) {
    case LineShapeKind::VanVleckHuber:
      return van_vleck_huber_shape(f, fc, al, temperature);
    case LineShapeKind::Doppler:
      return doppler_shape(f, fc, ad);
    case LineShapeKind::Voigt:
      break;
  }
  return voigt_shape(f, fc, al, ad);
}

AbsorptionSpectrum absorption_coefficient(const LineCatalog& catalog,
                                          const AtmosphericState& state,
                                          const Eigen::ArrayXd& grid,
                                          const AbsorptionOptions& options) {
  for (Eigen::Index i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "frequency grid must be strictly increasing");
    }
  }
  if (grid.size() > 0 && !(grid[0] > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "frequency grid must be positive");
  }

  AbsorptionSpectrum out{grid, Eigen::ArrayXd::Zero(grid.size()), state};
  const double p = state.pressure;
  const double t = state.temperature;
  const double* begin = grid.data();
  const double* end = grid.data() + grid.size();

  for (const SpectralLine& line : catalog.lines()) {
    const double mu = state.vmr(line.molecule_id);
    if (mu <= 0.0) continue;
    const double fc = line_center(line, p);
    const double* lo = std::lower_bound(begin, end, fc - options.wing_cutoff);
    const double* hi = std::upper_bound(lo, end, fc + options.wing_cutoff);
    if (lo == hi) continue;

    const double al = lorentz_halfwidth(line, p, t, mu);
    const double ad = doppler_halfwidth(line, t, p);
    const double s = line_intensity(line, t, fc) * abundance_factor(line, options);
    // S in cm/molecule and F in 1/Hz: 1e-2 m/cm times c Hz per m^-1.
    const double amplitude = number_density(p, t, mu) * s * 1e-2 * speed_of_light;
    const LineShapeKind kind = select_line_shape(al, ad);

    for (const double* f = lo; f != hi; ++f) {
      double shape = 0.0;
      switch (kind) {
        case LineShapeKind::VanVleckHuber:
          shape = van_vleck_huber_shape(*f, fc, al, t);
          break;
        case LineShapeKind::Doppler:
          shape = doppler_shape(*f, fc, ad);
          break;
        case LineShapeKind::Voigt:
          shape = voigt_shape(*f, fc, al, ad);
          break;
      }
      out.kappa[f - begin] += amplitude * shape;
    }
  }
  return out;
}

}  // namespace thz
