#include "thz/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <fmt/format.h>

#include "thz/constants.hpp"
#include "thz/error.hpp"

namespace thz {
namespace {

using constants::earth_radius;
using constants::pi;

struct Interval {
  double lo;
  double hi;
};

// Where the ray from radius R + h0 at elevation psi lies inside the sphere
// of radius R + h. Solves s^2 + 2 b s + c = 0 with b = (R + h0) sin(psi)
// and c = (h0 - h)(2R + h0 + h), kept in altitude differences for accuracy.
std::optional<Interval> inside_sphere(double h0, double sin_psi, double h) {
  const double b = (earth_radius + h0) * sin_psi;
  const double c = (h0 - h) * (2.0 * earth_radius + h0 + h);
  const double disc = b * b - c;
  if (disc < 0.0) return std::nullopt;
  const double root = std::sqrt(disc);
  const double q = b >= 0.0 ? -(b + root) : -(b - root);
  if (q == 0.0) return Interval{0.0, 0.0};
  double s1 = q;
  double s2 = c / q;
  if (s1 > s2) std::swap(s1, s2);
  return Interval{s1, s2};
}

double overlap(const std::optional<Interval>& iv, double max_range) {
  if (!iv) return 0.0;
  const double lo = std::max(iv->lo, 0.0);
  const double hi = std::min(iv->hi, max_range);
  return std::max(hi - lo, 0.0);
}

}  // namespace

LinkEndpoints make_endpoints(double h_a, double h_b, double rho) {
  return LinkEndpoints{std::min(h_a, h_b), std::max(h_a, h_b), rho};
}

double PathGeometry::in_atmosphere_length() const { return total_length(segments); }

double total_length(const std::vector<PathSegment>& segments) {
  double sum = 0.0;
  for (const auto& s : segments) sum += s.length;
  return sum;
}

double slant_range(const LinkEndpoints& ep) {
  const double a = earth_radius + ep.h_low;
  const double b = earth_radius + ep.h_high;
  // (b - a)^2 + 2ab(1 - cos rho), with 1 - cos rho = 2 sin^2(rho/2).
  const double s = std::sin(0.5 * ep.rho);
  const double dh = ep.h_high - ep.h_low;
  return std::sqrt(dh * dh + 4.0 * a * b * s * s);
}

double elevation_angle(const LinkEndpoints& ep) {
  const double r = slant_range(ep);
  if (!(r > 0.0)) {
    throw Error(ErrorCode::DegenerateGeometry, "terminals coincide; elevation undefined");
  }
  const double arg = std::clamp((earth_radius + ep.h_low) * std::sin(ep.rho) / r, -1.0, 1.0);
  return (0.5 * pi - ep.rho) - std::asin(arg);
}

double central_angle_for_elevation(double h_low, double h_high, double psi) {
  const double ratio = (earth_radius + h_low) / (earth_radius + h_high);
  return std::acos(std::clamp(ratio * std::cos(psi), -1.0, 1.0)) - psi;
}

double great_circle_angle(double lat1, double lon1, double lat2, double lon2) {
  const double sl = std::sin(0.5 * (lat2 - lat1));
  const double sn = std::sin(0.5 * (lon2 - lon1));
  const double h = sl * sl + std::cos(lat1) * std::cos(lat2) * sn * sn;
  return 2.0 * std::asin(std::min(1.0, std::sqrt(h)));
}

double atmospheric_path_length(double h_start, double psi, double atmosphere_top) {
  if (!(h_start < atmosphere_top)) {
    throw Error(ErrorCode::RayMissesAtmosphere,
                fmt::format("start altitude {} m is not below the atmosphere top {} m", h_start,
                            atmosphere_top));
  }
  if (!(psi > 0.0 && psi <= 0.5 * pi)) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("elevation {} rad outside (0, pi/2]", psi));
  }
  const double a = earth_radius + h_start;
  const double sin_psi = std::sin(psi);
  const double dh = atmosphere_top - h_start;
  const double b2_minus_a2 = dh * (2.0 * earth_radius + atmosphere_top + h_start);
  return b2_minus_a2 / (a * sin_psi + std::sqrt(a * a * sin_psi * sin_psi + b2_minus_a2));
}

std::vector<PathSegment> layer_path_segments(double h_start, double psi,
                                             const LayerStack& layers, double max_range) {
  if (!std::isfinite(max_range) && !(psi > 0.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "an unbounded ray needs positive elevation to leave the atmosphere");
  }
  if (layers.size() == 0) return {};
  if (h_start < layers.bottom_altitude()) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("ray origin {} m lies below the layer stack", h_start));
  }
  const double sin_psi = std::sin(psi);

  // Lowest point of a descending chord must stay above ground.
  if (psi < 0.0) {
    const double a = earth_radius + h_start;
    const double s_min = std::min(-a * sin_psi, max_range);
    const double r_min =
        std::sqrt(a * a + s_min * s_min + 2.0 * a * s_min * sin_psi);
    if (r_min < earth_radius + layers.bottom_altitude()) {
      throw Error(ErrorCode::DegenerateGeometry, "line of sight passes below the surface");
    }
  }

  std::vector<PathSegment> out;
  std::optional<Interval> below = inside_sphere(h_start, sin_psi, layers.layers[0].lower);
  for (std::size_t i = 0; i < layers.size(); ++i) {
    std::optional<Interval> inside = inside_sphere(h_start, sin_psi, layers.layers[i].upper);
    const double length = overlap(inside, max_range) - overlap(below, max_range);
    if (length > 0.0) out.push_back({i, length});
    below = inside;
  }
  return out;
}

double path_between_altitudes(double h_start, double psi, double h_lo, double h_hi,
                              double max_range) {
  if (!(h_hi > h_lo)) return 0.0;
  const double sin_psi = std::sin(psi);
  return overlap(inside_sphere(h_start, sin_psi, h_hi), max_range) -
         overlap(inside_sphere(h_start, sin_psi, h_lo), max_range);
}

std::vector<PathSegment> plane_parallel_segments(double h_start, double psi,
                                                 const LayerStack& layers) {
  if (!(psi > 0.0)) {
    throw Error(ErrorCode::ZeroElevation, "plane-parallel path needs positive elevation");
  }
  const double sin_psi = std::sin(psi);
  std::vector<PathSegment> out;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const Layer& l = layers.layers[i];
    if (l.upper <= h_start) continue;
    const double thickness = l.upper - std::max(l.lower, h_start);
    out.push_back({i, thickness / sin_psi});
  }
  return out;
}

PathGeometry path_geometry(const LinkEndpoints& ep, const LayerStack& layers) {
  PathGeometry g;
  g.r_as = slant_range(ep);
  g.psi = elevation_angle(ep);
  g.segments = layer_path_segments(ep.h_low, g.psi, layers, g.r_as);
  return g;
}

}  // namespace thz
