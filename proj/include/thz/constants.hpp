#pragma once

#include <numbers>

namespace thz::constants {

inline constexpr double pi = std::numbers::pi;

// CODATA 2018 exact SI values.
inline constexpr double speed_of_light = 299'792'458.0;  // m/s
inline constexpr double planck = 6.626'070'15e-34;       // J s
inline constexpr double boltzmann = 1.380'649e-23;       // J/K
inline constexpr double avogadro = 6.022'140'76e23;      // 1/mol
inline constexpr double gas_constant = boltzmann * avogadro;
inline constexpr double atomic_mass_unit = 1.660'539'066'60e-27;  // kg

inline constexpr double earth_radius = 6'371'000.0;  // m, spherical Earth
inline constexpr double reference_pressure = 101'325.0;  // Pa
inline constexpr double reference_temperature = 296.0;   // K, catalog T0

inline constexpr double default_atmosphere_top = 500'000.0;  // m
inline constexpr double default_layer_resolution = 500.0;    // m

// Hz per cm^-1.
inline constexpr double hz_per_wavenumber = 100.0 * speed_of_light;

}  // namespace thz::constants
