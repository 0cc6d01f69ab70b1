#include <doctest.h>

#include <cmath>

#include "thz/atmosphere.hpp"
#include "thz/error.hpp"

using namespace thz;

namespace {

// USSA-1976 reference points at geometric altitude, frozen from an
// independent implementation of the standard.
struct Reference {
  double z, t, p;
};
constexpr Reference kUssa[] = {
    {0.0, 288.15, 101325.0},
    {5000.0, 255.67554322180348, 54048.26223756018},
    {11000.0, 216.77351270445553, 22699.93683700412},
    {20000.0, 216.65, 5529.29077788397},
    {32000.0, 228.48971865615363, 889.0602479246916},
    {47000.0, 269.6841308536258, 115.85032428841292},
    {51000.0, 270.65, 70.4577924126659},
    {71000.0, 216.84591067876457, 4.479523058505996},
    {80000.0, 198.63857625086885, 1.0524644697315866},
};

// Geometric altitude of the 11 km geopotential tropopause.
constexpr double kTropopause = 6'356'766.0 * 11'000.0 / (6'356'766.0 - 11'000.0);

}  // namespace

TEST_CASE("standard profile against reference points") {
  for (const auto& r : kUssa) {
    AtmosphericState s = profile_at(r.z);
    CAPTURE(r.z);
    CHECK(s.temperature == doctest::Approx(r.t).epsilon(1e-6));
    CHECK(s.pressure == doctest::Approx(r.p).epsilon(1e-5));
  }
}

TEST_CASE("tropopause values") {
  AtmosphericState s = profile_at(kTropopause);
  CHECK(s.temperature == doctest::Approx(216.65).epsilon(1e-6));
  CHECK(s.pressure == doctest::Approx(22632.0).epsilon(1e-4));
}

TEST_CASE("altitude bounds") {
  CHECK_NOTHROW(profile_at(0.0));
  CHECK_NOTHROW(profile_at(500'000.0));
  try {
    profile_at(600'000.0);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AltitudeOutOfRange);
  }
  CHECK_THROWS_AS(profile_at(-1.0), Error);
}

TEST_CASE("pressure strictly decreasing and states physical up to 500 km") {
  double prev = std::numeric_limits<double>::infinity();
  for (double z = 0.0; z <= 500'000.0; z += 250.0) {
    AtmosphericState s = profile_at(z);
    CAPTURE(z);
    REQUIRE(s.pressure < prev);
    CHECK(s.pressure > 0.0);
    CHECK(s.temperature > 0.0);
    double major = 0.0;
    for (auto [id, mu] : s.mixing_ratios) {
      CHECK(mu >= 0.0);
      CHECK(mu <= 1.0);
      major += mu;
    }
    CHECK(major <= 1.0 + 1e-3);
    prev = s.pressure;
  }
}

TEST_CASE("temperature is piecewise linear below 80 km") {
  // Second differences vanish away from the layer breaks. Above 80 km the
  // molecular-weight ratio bends the kinetic temperature.
  const double breaks[] = {11019.1, 20063.1, 32161.9, 47350.1, 51412.5, 71802.0};
  for (double z = 1000.0; z < 79'000.0; z += 700.0) {
    bool near_break = false;
    for (double b : breaks) near_break |= std::abs(z - b) < 1500.0;
    if (near_break) continue;
    const double d2 =
        profile_at(z + 500).temperature - 2 * profile_at(z).temperature +
        profile_at(z - 500).temperature;
    CAPTURE(z);
    // Geometric altitude bends the profile slightly; keep well under the
    // lapse-rate scale.
    CHECK(std::abs(d2) < 2e-3);
  }
}

TEST_CASE("continuity at the 86 km hand-over") {
  AtmosphericState below = profile_at(85'999.0);
  AtmosphericState above = profile_at(86'001.0);
  CHECK(below.temperature == doctest::Approx(above.temperature).epsilon(2e-3));
  CHECK(below.pressure == doctest::Approx(above.pressure).epsilon(2e-3));
}

TEST_CASE("composition") {
  AtmosphericState ground = profile_at(0.0);
  CHECK(ground.vmr(1) == doctest::Approx(kDefaultGroundH2O));
  CHECK(ground.vmr(7) == doctest::Approx(0.209476 * (1 - kDefaultGroundH2O)));
  AtmosphericState strato = profile_at(40'000.0);
  CHECK(strato.vmr(7) == doctest::Approx(0.209476).epsilon(1e-6));
  CHECK(strato.vmr(1) == doctest::Approx(default_h2o_profile(40'000.0)));
  CHECK(default_h2o_profile(2000.0) == doctest::Approx(kDefaultGroundH2O / std::exp(1.0)));

  AtmosphericState dry = profile_at(0.0, 0.0);
  CHECK(dry.vmr(1) == 0.0);
  CHECK(dry.vmr(7) == doctest::Approx(0.209476));
  CHECK(profile_at(0.0, 0.02).vmr(1) == doctest::Approx(0.02));
  CHECK(ground.vmr(99) == 0.0);
}

TEST_CASE("profile is pure") {
  AtmosphericState a = profile_at(12345.0);
  AtmosphericState b = profile_at(12345.0);
  CHECK(a.pressure == b.pressure);
  CHECK(a.temperature == b.temperature);
  CHECK(a.mixing_ratios == b.mixing_ratios);
}

TEST_CASE("layer construction") {
  SUBCASE("full stack") {
    LayerStack s = build_layers(0.0, 500'000.0, 500.0);
    CHECK(s.size() == 1000);
    CHECK(s.top_altitude() == 500'000.0);
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      REQUIRE(s.layers[i].upper == s.layers[i + 1].lower);
      REQUIRE(s.layers[i].state.pressure > s.layers[i + 1].state.pressure);
    }
  }
  SUBCASE("remainder") {
    LayerStack s = build_layers(0.0, 1250.0, 500.0);
    REQUIRE(s.size() == 3);
    CHECK(s.layers[2].lower == 1000.0);
    CHECK(s.layers[2].upper == 1250.0);
    CHECK(s.layers[2].state.altitude == 1125.0);
  }
  SUBCASE("midpoint sampling") {
    LayerStack s = build_layers(1000.0, 3000.0, 1000.0);
    CHECK(s.layers[0].state.pressure == profile_at(1500.0).pressure);
  }
  SUBCASE("exact multiple with rounding noise") {
    CHECK(build_layers(0.0, 0.3, 0.1).size() == 3);
  }
  SUBCASE("invalid") {
    CHECK_THROWS_AS(build_layers(10.0, 10.0, 500.0), Error);
    CHECK_THROWS_AS(build_layers(0.0, 1000.0, 0.0), Error);
    CHECK_THROWS_AS(build_layers(0.0, 1000.0, -5.0), Error);
  }
}

TEST_CASE("custom atmosphere file") {
  const char* text =
      "# two-point test atmosphere\n"
      "altitude_m,pressure_pa,temperature_k,o2_vmr,ar_vmr\n"
      "0,100000,300,0.2,0.01\n"
      "1000,10000,250,0.2,0.01\n";
  AtmosphereModel m = AtmosphereModel::from_csv(text, "test");
  CHECK(m.top() == 1000.0);
  AtmosphericState mid = m.at(500.0);
  CHECK(mid.pressure == doctest::Approx(std::sqrt(100000.0 * 10000.0)));
  CHECK(mid.temperature == doctest::Approx(275.0));
  CHECK(mid.vmr(1) == doctest::Approx(default_h2o_profile(500.0)));
  CHECK_THROWS_AS(m.at(1500.0), Error);

  CHECK_THROWS_AS(AtmosphereModel::from_csv("altitude_m,pressure_pa\n0,1\n", "bad"), Error);
  CHECK_THROWS_AS(
      AtmosphereModel::from_csv("altitude_m,pressure_pa,temperature_k,xyz_vmr\n0,1,1,0\n", "bad"),
      Error);
}
