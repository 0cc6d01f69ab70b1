#pragma once

#include <Eigen/Core>

#include "thz/atmosphere.hpp"
#include "thz/catalog.hpp"

namespace thz {

enum class LineShapeKind { VanVleckHuber, Doppler, Voigt };

/// Total internal partition sum from per-species fits, valid 70-3000 K.
/// Throws TemperatureOutOfFitRange or UnknownSpecies.
double partition_function(int molecule_id, double temperature);

/// Molecules per m^3 of a species with mixing ratio `mu`.
double number_density(double pressure, double temperature, double mu = 1.0);

/// Pressure-shifted centre, Hz.
double line_center(const SpectralLine& line, double pressure);

/// Collisional HWHM in Hz.
double lorentz_halfwidth(const SpectralLine& line, double pressure, double temperature,
                         double mu);

/// Thermal HWHM in Hz at the centre shifted by `pressure`. Throws
/// UnknownSpeciesMass.
double doppler_halfwidth(const SpectralLine& line, double temperature,
                         double pressure = 0.0);

/// Intensity at `temperature`, in the catalog units; the stimulated-emission
/// factor is evaluated at `center` (Hz).
double line_intensity(const SpectralLine& line, double temperature, double center);
double line_intensity(const SpectralLine& line, double temperature);

// Normalised shapes in 1/Hz. alpha_l and alpha_d are half widths in Hz.
double lorentz_shape(double f, double center, double alpha_l);
double van_vleck_weisskopf_shape(double f, double center, double alpha_l);
double van_vleck_huber_shape(double f, double center, double alpha_l, double temperature);
double doppler_shape(double f, double center, double alpha_d);
double voigt_shape(double f, double center, double alpha_l, double alpha_d);

/// VVH when alpha_l > 5 alpha_d, Doppler when alpha_d > 5 alpha_l, Voigt
/// otherwise.
LineShapeKind select_line_shape(double alpha_l, double alpha_d);

/// Shape of `line` at frequency f under the selection rule.
double line_shape(const SpectralLine& line, double f, double pressure, double temperature,
                  double mu);

struct AbsorptionOptions {
  double wing_cutoff = 750e9;  // Hz
  /// Catalog intensities already carry the natural isotopologue abundance
  /// (the usual convention). Then an overridden abundance rescales S by
  /// override/natural. When false, S is multiplied by the line's abundance.
  bool intensities_include_abundance = true;
};

struct AbsorptionSpectrum {
  Eigen::ArrayXd grid;   // Hz, strictly increasing
  Eigen::ArrayXd kappa;  // 1/m
  AtmosphericState state;
};

/// kappa(f) = sum over lines of N_i S_i(T) F_i(f) for |f - f_c| within the
/// wing cutoff. Per-frequency summation follows catalog order, so the
/// result does not depend on how callers distribute work.
AbsorptionSpectrum absorption_coefficient(const LineCatalog& catalog,
                                          const AtmosphericState& state,
                                          const Eigen::ArrayXd& grid,
                                          const AbsorptionOptions& options = {});

}  // namespace thz
