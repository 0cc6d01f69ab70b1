#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "thz/constants.hpp"
#include "thz/error.hpp"
#include "thz/geometry.hpp"

using namespace thz;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;
constexpr double kR = constants::earth_radius;

const LayerStack& stack() {
  static const LayerStack s = build_layers(0.0, 500'000.0, 500.0);
  return s;
}

ErrorCode code_of(auto fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ConfigError;
}

}  // namespace

TEST_CASE("slant range") {
  CHECK(slant_range({11'000.0, 500'000.0, 0.0}) == doctest::Approx(489'000.0).epsilon(1e-12));
  CHECK(slant_range({1000.0, 1000.0, 0.0}) == 0.0);
  // Chord identity on the surface.
  CHECK(slant_range({0.0, 0.0, 0.01}) == doctest::Approx(2 * kR * std::sin(0.005)).epsilon(1e-12));
  CHECK(slant_range({0.0, 0.0, 0.01}) == doctest::Approx(63'710.0).epsilon(1e-4));
  // Law of cosines at a generic point.
  const double a = kR + 11'000.0, b = kR + 500'000.0, rho = 0.05;
  CHECK(slant_range({11'000.0, 500'000.0, rho}) ==
        doctest::Approx(std::sqrt(a * a + b * b - 2 * a * b * std::cos(rho))).epsilon(1e-12));
}

TEST_CASE("endpoints are ordered") {
  LinkEndpoints ep = make_endpoints(500'000.0, 11'000.0, 0.1);
  CHECK(ep.h_low == 11'000.0);
  CHECK(ep.h_high == 500'000.0);
  CHECK(ep.rho == 0.1);
}

TEST_CASE("elevation angle") {
  CHECK(elevation_angle({11'000.0, 500'000.0, 0.0}) == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(elevation_angle({0.0, 1e12, 0.2}) == doctest::Approx(kPi / 2 - 0.2).epsilon(1e-6));
  for (double rho : {0.001, 0.01, 0.05, 0.1, 0.3}) {
    CAPTURE(rho);
    CHECK(std::abs(elevation_angle({11'000.0, 500'000.0, rho}) -
                   oracle::elevation_by_vectors(11'000.0, 500'000.0, rho)) < 1e-9);
  }
  // Equal altitudes: the chord dips below the local horizon.
  const double psi = elevation_angle({11'000.0, 11'000.0, 0.02});
  CHECK(psi == doctest::Approx(-0.01).epsilon(1e-12));
  CHECK(std::abs(psi - oracle::elevation_by_vectors(11'000.0, 11'000.0, 0.02)) < 1e-9);
  CHECK(code_of([] { elevation_angle({5.0, 5.0, 0.0}); }) == ErrorCode::DegenerateGeometry);
}

TEST_CASE("central angle for a given elevation round-trips") {
  for (double deg : {5.0, 30.0, 38.2, 60.0, 90.0}) {
    const double rho = central_angle_for_elevation(11'000.0, 500'000.0, deg * kDeg);
    CAPTURE(deg);
    CHECK(elevation_angle({11'000.0, 500'000.0, rho}) == doctest::Approx(deg * kDeg).epsilon(1e-12));
  }
}

TEST_CASE("great circle angle") {
  CHECK(great_circle_angle(0, 0, 0, 0.3) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(great_circle_angle(0.1, 0.2, 0.1, 0.2) == 0.0);
  CHECK(great_circle_angle(0, 0, kPi / 2, 1.0) == doctest::Approx(kPi / 2).epsilon(1e-14));
}

TEST_CASE("atmospheric path length") {
  CHECK(atmospheric_path_length(0.0, kPi / 2, 500'000.0) == doctest::Approx(500'000.0).epsilon(1e-12));
  CHECK(atmospheric_path_length(11'000.0, kPi / 2, 500'000.0) ==
        doctest::Approx(489'000.0).epsilon(1e-12));
  for (double deg : {1.0, 5.0, 20.0, 45.0, 70.0}) {
    for (double h : {0.0, 11'000.0, 100'000.0}) {
      CAPTURE(deg);
      CAPTURE(h);
      const double ref = oracle::ray_to_sphere(h, deg * kDeg, 500'000.0);
      CHECK(atmospheric_path_length(h, deg * kDeg, 500'000.0) == doctest::Approx(ref).epsilon(1e-6));
    }
  }
  double prev = std::numeric_limits<double>::infinity();
  for (double deg = 0.5; deg <= 90.0; deg += 0.5) {
    const double r = atmospheric_path_length(11'000.0, deg * kDeg, 500'000.0);
    REQUIRE(r < prev);
    prev = r;
  }
  CHECK(code_of([] { atmospheric_path_length(600'000.0, 1.0, 500'000.0); }) ==
        ErrorCode::RayMissesAtmosphere);
}

TEST_CASE("layer segments") {
  SUBCASE("zenith gives the layer thickness") {
    auto seg = layer_path_segments(0.0, kPi / 2, stack());
    REQUIRE(seg.size() == 1000);
    for (const auto& s : seg) REQUIRE(s.length == doctest::Approx(500.0).epsilon(1e-9));
  }
  SUBCASE("segments telescope to the full path") {
    for (double deg : {2.0, 10.0, 38.2, 75.0}) {
      for (double h : {0.0, 11'000.0, 11'250.0}) {
        auto seg = layer_path_segments(h, deg * kDeg, stack());
        CAPTURE(deg);
        CAPTURE(h);
        CHECK(total_length(seg) ==
              doctest::Approx(atmospheric_path_length(h, deg * kDeg, 500'000.0)).epsilon(1e-9));
        for (const auto& s : seg) CHECK(s.length > 0.0);
      }
    }
  }
  SUBCASE("start inside a layer") {
    auto seg = layer_path_segments(11'250.0, kPi / 2, stack());
    CHECK(seg.front().layer == 22);
    CHECK(seg.front().length == doctest::Approx(250.0).epsilon(1e-9));
  }
  SUBCASE("curved segments are shorter than plane-parallel at 38.2 deg") {
    const double psi = 38.2 * kDeg;
    auto curved = layer_path_segments(0.0, psi, stack());
    auto flat = plane_parallel_segments(0.0, psi, stack());
    REQUIRE(curved.size() == flat.size());
    double prev_gap = -1.0;
    for (std::size_t i = 0; i < curved.size(); ++i) {
      CHECK(curved[i].length < flat[i].length);
      const double gap = flat[i].length - curved[i].length;
      CHECK(gap > prev_gap);
      prev_gap = gap;
      // Each chord is at least as long as the layer is thick.
      CHECK(curved[i].length >= stack().layers[i].thickness() - 1e-9);
    }
  }
  SUBCASE("finite range stops at the far terminal") {
    auto seg = layer_path_segments(0.0, kPi / 2, stack(), 1200.0);
    REQUIRE(seg.size() == 3);
    CHECK(seg[2].length == doctest::Approx(200.0).epsilon(1e-9));
  }
  SUBCASE("negative elevation chord between equal altitudes") {
    const LinkEndpoints ep{11'000.0, 11'000.0, 200'000.0 / kR};
    PathGeometry g = path_geometry(ep, stack());
    CHECK(g.psi < 0.0);
    CHECK(g.in_atmosphere_length() == doctest::Approx(g.r_as).epsilon(1e-9));
    // The chord sags below the terminals, so it visits lower layers.
    CHECK(g.segments.front().layer < 22);
  }
  SUBCASE("line of sight through the Earth") {
    const LinkEndpoints ep{1'000.0, 1'000.0, 0.2};
    CHECK(code_of([&] { path_geometry(ep, stack()); }) == ErrorCode::DegenerateGeometry);
  }
}

TEST_CASE("plane-parallel segments") {
  auto z = plane_parallel_segments(0.0, kPi / 2, stack());
  CHECK(z[0].length == doctest::Approx(500.0).epsilon(1e-12));
  auto t = plane_parallel_segments(0.0, 30 * kDeg, stack());
  CHECK(t[5].length == doctest::Approx(1000.0).epsilon(1e-12));
  CHECK(total_length(plane_parallel_segments(0.0, 5 * kDeg, stack())) >
        total_length(layer_path_segments(0.0, 5 * kDeg, stack())));
  CHECK(code_of([] { plane_parallel_segments(0.0, 0.0, stack()); }) == ErrorCode::ZeroElevation);
  CHECK(code_of([] { plane_parallel_segments(0.0, -0.1, stack()); }) == ErrorCode::ZeroElevation);
}

TEST_CASE("curved versus plane-parallel totals") {
  const double zen_c = total_length(layer_path_segments(0.0, kPi / 2, stack()));
  const double zen_p = total_length(plane_parallel_segments(0.0, kPi / 2, stack()));
  CHECK(std::abs(zen_c / zen_p - 1) < 1e-12);
  for (int deg = 1; deg < 90; ++deg) {
    const double psi = deg * kDeg;
    const double c = total_length(layer_path_segments(0.0, psi, stack()));
    const double p = total_length(plane_parallel_segments(0.0, psi, stack()));
    CAPTURE(deg);
    CHECK(p >= c);
    if (deg < 80) CHECK(p > c);
  }
}

TEST_CASE("path geometry between terminals") {
  PathGeometry g = path_geometry({11'000.0, 500'000.0, 0.0}, stack());
  CHECK(g.r_as == doctest::Approx(489'000.0));
  CHECK(g.psi == doctest::Approx(kPi / 2));
  CHECK(g.in_atmosphere_length() == doctest::Approx(489'000.0).epsilon(1e-9));

  // GEO sits far above the stack: only the 500 km of atmosphere count.
  PathGeometry geo = path_geometry({11'000.0, 35'786'000.0, 0.0}, stack());
  CHECK(geo.in_atmosphere_length() == doctest::Approx(489'000.0).epsilon(1e-9));
  CHECK(geo.r_as == doctest::Approx(35'775'000.0));
}
