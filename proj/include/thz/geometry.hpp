#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "thz/atmosphere.hpp"

namespace thz {

/// Two terminals over a spherical Earth. rho is the central angle between
/// them (rad); the lower terminal is the ray origin.
struct LinkEndpoints {
  double h_low = 0.0;
  double h_high = 0.0;
  double rho = 0.0;
};

/// Orders two altitudes so the lower one becomes the ray origin.
LinkEndpoints make_endpoints(double h_a, double h_b, double rho);

struct PathSegment {
  std::size_t layer = 0;
  double length = 0.0;  // m
};

struct PathGeometry {
  double r_as = 0.0;  // m
  double psi = 0.0;   // rad, elevation at the lower terminal
  std::vector<PathSegment> segments;

  double in_atmosphere_length() const;
};

double slant_range(const LinkEndpoints& ep);

/// Elevation of the higher terminal seen from the lower one, rad. Negative
/// for chords that dip below the lower terminal's horizon (equal-altitude
/// links). Throws DegenerateGeometry when the terminals coincide.
double elevation_angle(const LinkEndpoints& ep);

/// Central angle that puts a terminal at h_high under elevation psi from
/// h_low.
double central_angle_for_elevation(double h_low, double h_high, double psi);

/// Haversine central angle between two (lat, lon) points, all in rad.
double great_circle_angle(double lat1, double lon1, double lat2, double lon2);

/// Distance along the ray from h_start to the sphere at atmosphere_top.
/// Requires psi in (0, pi/2]; throws RayMissesAtmosphere when h_start is
/// not below the top.
double atmospheric_path_length(double h_start, double psi, double atmosphere_top);

/// Length of the ray inside each layer, following the ray for at most
/// `max_range` metres. Works for any psi provided max_range is finite;
/// with the default (unbounded) psi must be positive. Only layers with a
/// positive length are listed, in layer order. Throws DegenerateGeometry
/// when the ray passes below the surface.
std::vector<PathSegment> layer_path_segments(
    double h_start, double psi, const LayerStack& layers,
    double max_range = std::numeric_limits<double>::infinity());

/// Ray length between the spheres at altitudes h_lo and h_hi, following
/// the ray for at most max_range metres.
double path_between_altitudes(double h_start, double psi, double h_lo, double h_hi,
                              double max_range = std::numeric_limits<double>::infinity());

/// Flat-Earth counterpart: thickness / sin(psi) above h_start. Throws
/// ZeroElevation for psi <= 0.
std::vector<PathSegment> plane_parallel_segments(double h_start, double psi,
                                                 const LayerStack& layers);

/// Slant range, elevation and per-layer segments between the endpoints.
PathGeometry path_geometry(const LinkEndpoints& ep, const LayerStack& layers);

double total_length(const std::vector<PathSegment>& segments);

}  // namespace thz
