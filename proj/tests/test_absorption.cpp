#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "oracles.hpp"
#include "thz/absorption.hpp"
#include "thz/constants.hpp"
#include "thz/faddeeva.hpp"

using namespace thz;
using constants::boltzmann;
using constants::planck;
using constants::reference_pressure;

namespace {

SpectralLine water_line() {
  SpectralLine l;
  l.molecule_id = 1;
  l.isotopologue_id = 1;
  l.nu0 = 18.577;
  l.intensity = 1.986e-19;
  l.gamma_air = 0.101;
  l.gamma_self = 0.506;
  l.e_lower = 23.7944;
  l.n_air = 0.76;
  l.delta_air = -0.00011;
  l.abundance = 0.997317;
  return l;
}

double max_rel_dev(double a, double b, double step, auto&& fa, auto&& fb) {
  double worst = 0.0;
  for (double x = a; x <= b; x += step) worst = std::max(worst, std::abs(fa(x) / fb(x) - 1));
  return worst;
}

}  // namespace

TEST_CASE("Faddeeva function against reference values") {
  // Reference values from an independent complex error function.
  struct Ref {
    std::complex<double> z, w;
  };
  const Ref refs[] = {
      {{0.0, 0.0}, {1.0, 0.0}},
      {{1.0, 1.0}, {0.30474420525691254, 0.2082189382028316}},
      {{0.5, 0.1}, {0.7175877421575946, 0.4084744016030165}},
      {{3.0, 0.01}, {0.0009088307067415815, 0.20114646254019664}},
      {{20.0, 1.0}, {0.0014122347663929663, 0.028173995667521986}},
      {{200.0, 0.1}, {1.4105265022864512e-06, 0.002820982475620454}},
      {{-1.0, 2.0}, {0.21849261527489067, -0.09299780939260188}},
      {{1.0, -0.5}, {0.15554114245433115, 1.1378372157816865}},
  };
  for (const auto& r : refs) {
    std::complex<double> w = faddeeva(r.z);
    CAPTURE(r.z);
    CHECK(std::abs(w - r.w) / std::abs(r.w) < 1e-6);
  }
}

TEST_CASE("line centre shift") {
  SpectralLine l = water_line();
  CHECK(line_center(l, 0.0) == wavenumber_to_frequency(l.nu0));
  CHECK(line_center(l, reference_pressure) ==
        doctest::Approx(wavenumber_to_frequency(l.nu0 + l.delta_air)).epsilon(1e-15));
  l.delta_air = -0.01;
  const double shift = line_center(l, reference_pressure / 2) - line_center(l, 0.0);
  CHECK(shift == doctest::Approx(-149.896e6).epsilon(1e-5));
}

TEST_CASE("Lorentz half width") {
  SpectralLine l = water_line();
  CHECK(lorentz_halfwidth(l, reference_pressure, 296.0, 0.0) ==
        doctest::Approx(wavenumber_to_frequency(l.gamma_air)));
  CHECK(lorentz_halfwidth(l, 0.0, 296.0, 0.3) == 0.0);
  l.gamma_air = 0.1;
  l.n_air = 0.7;
  CHECK(lorentz_halfwidth(l, reference_pressure, 592.0, 0.0) ==
        doctest::Approx(1.845e9).epsilon(1e-3));
  CHECK(lorentz_halfwidth(l, reference_pressure, 296.0, 1.0) ==
        doctest::Approx(wavenumber_to_frequency(l.gamma_self)));
}

TEST_CASE("Doppler half width") {
  SpectralLine l = water_line();
  const double a296 = doppler_halfwidth(l, 296.0);
  CHECK(a296 == doctest::Approx(0.81e6).epsilon(0.01));
  CHECK(doppler_halfwidth(l, 74.0) == doctest::Approx(a296 / 2).epsilon(1e-12));
  CHECK(doppler_halfwidth(l, 4 * 296.0) == doctest::Approx(2 * a296).epsilon(1e-12));
  l.molecule_id = 42;
  try {
    doppler_halfwidth(l, 296.0);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownSpeciesMass);
  }
}

TEST_CASE("partition function") {
  for (int m : {1, 2, 3, 4, 5, 6, 7}) {
    CAPTURE(m);
    CHECK(partition_function(m, 296.0) / partition_function(m, 296.0) == 1.0);
    double prev = 0.0;
    for (double t = 70.0; t <= 3000.0; t += 10.0) {
      const double q = partition_function(m, t);
      REQUIRE(q > prev);
      prev = q;
    }
  }
  // Linear rotors: Q proportional to T in the classical limit. CO2 is left
  // out; its low bending mode adds a vibrational factor by 592 K.
  CHECK(partition_function(2, 592.0) / partition_function(2, 296.0) > 2.0);
  for (int m : {5, 7}) {
    CAPTURE(m);
    CHECK(partition_function(m, 592.0) / partition_function(m, 296.0) ==
          doctest::Approx(2.0).epsilon(0.1));
  }
  // Nonlinear rotor: T^1.5.
  CHECK(partition_function(1, 592.0) / partition_function(1, 296.0) ==
        doctest::Approx(std::pow(2.0, 1.5)).epsilon(0.1));
  auto code = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ConfigError;
  };
  CHECK(code([] { partition_function(1, 50.0); }) == ErrorCode::TemperatureOutOfFitRange);
  CHECK(code([] { partition_function(1, 3500.0); }) == ErrorCode::TemperatureOutOfFitRange);
  CHECK(code([] { partition_function(42, 296.0); }) == ErrorCode::UnknownSpecies);
}

TEST_CASE("line intensity temperature scaling") {
  SpectralLine l = water_line();
  CHECK(line_intensity(l, 296.0) == l.intensity);

  // E'' = 0 and a vanishing centre leave only the partition ratio.
  SpectralLine z = l;
  z.e_lower = 0.0;
  z.nu0 = 1e-9;
  CHECK(line_intensity(z, 250.0) ==
        doctest::Approx(l.intensity * partition_function(1, 296.0) / partition_function(1, 250.0))
            .epsilon(1e-9));

  // Closed-form evaluation at 250 K with E'' = 100 cm^-1.
  l.e_lower = 100.0;
  const double c2 = 1.438776877;  // cm K
  const double t = 250.0, t0 = 296.0;
  const double expected = l.intensity * partition_function(1, t0) / partition_function(1, t) *
                          std::exp(-c2 * 100.0 / t) / std::exp(-c2 * 100.0 / t0) *
                          (1 - std::exp(-c2 * l.nu0 / t)) / (1 - std::exp(-c2 * l.nu0 / t0));
  CHECK(line_intensity(l, t) == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("shape normalisation") {
  using boost::math::quadrature::gauss_kronrod;
  const double fc = 500e9;
  SUBCASE("Doppler") {
    const double ad = 1e6;
    const double area = gauss_kronrod<double, 61>::integrate(
        [&](double f) { return doppler_shape(f, fc, ad); }, fc - 5000 * ad, fc + 5000 * ad, 15,
        1e-12);
    CHECK(area == doctest::Approx(1.0).epsilon(0.01));
  }
  SUBCASE("Lorentz pair behind VVH") {
    const double al = 3e9;
    auto pair = [&](double f) { return lorentz_shape(f, fc, al) + lorentz_shape(f, -fc, al); };
    double area = 0.0;
    const double lo = fc - 5000 * al < -fc ? -fc - 5000 * al : fc - 5000 * al;
    for (double a = lo; a < fc + 5000 * al; a += 100 * al) {
      area += gauss_kronrod<double, 61>::integrate(pair, a, a + 100 * al, 10, 1e-12);
    }
    // Both members of the pair are unit Lorentzians; one of them is centred
    // at -fc and contributes fully when the window spans it.
    CHECK(area / (fc - 5000 * al < -fc ? 2.0 : 1.0) == doctest::Approx(1.0).epsilon(0.02));
  }
  SUBCASE("Voigt") {
    const double al = 1e6, ad = 1.5e6;
    const double area = gauss_kronrod<double, 61>::integrate(
        [&](double f) { return voigt_shape(f, fc, al, ad); }, fc - 5000 * ad, fc + 5000 * ad,
        15, 1e-12);
    CHECK(area == doctest::Approx(1.0).epsilon(0.01));
  }
}

TEST_CASE("Voigt against direct convolution") {
  const double fc = 300e9;
  for (double ratio : {0.05, 0.2, 1.0, 5.0, 20.0}) {
    const double ad = 1e6, al = ratio * ad;
    for (double k : {0.0, 0.3, 1.0, 2.5, 6.0, 15.0}) {
      const double f = fc + k * std::max(al, ad);
      const double ref = oracle::voigt(f, fc, al, ad);
      CAPTURE(ratio);
      CAPTURE(k);
      CHECK(std::abs(voigt_shape(f, fc, al, ad) / ref - 1) < 1e-4);
    }
  }
}

TEST_CASE("Voigt limits") {
  const double fc = 300e9;
  SUBCASE("narrow Gaussian tends to Lorentz") {
    const double al = 1e8, ad = al / 100;
    const double dev = max_rel_dev(
        fc - 10 * al, fc + 10 * al, al / 50, [&](double f) { return voigt_shape(f, fc, al, ad); },
        [&](double f) { return lorentz_shape(f, fc, al); });
    CHECK(dev < 0.01);
    // Much narrower Gaussian: within 0.1% everywhere.
    CHECK(std::abs(voigt_shape(fc + 3 * al, fc, al, al / 1000) / lorentz_shape(fc + 3 * al, fc, al) -
                   1) < 1e-3);
  }
  SUBCASE("narrow Lorentzian tends to Doppler") {
    const double ad = 1e6, al = ad / 100;
    // Peak-relative (max-norm) deviation; far in the Gaussian tail any
    // Lorentz admixture dominates the ratio.
    double worst = 0.0;
    const double peak = doppler_shape(fc, fc, ad);
    for (double f = fc - 10 * ad; f <= fc + 10 * ad; f += ad / 50) {
      worst = std::max(worst, std::abs(voigt_shape(f, fc, al, ad) - doppler_shape(f, fc, ad)));
    }
    CHECK(worst / peak < 0.01);
    CHECK(std::abs(voigt_shape(fc, fc, ad / 1e4, ad) / peak - 1) < 1e-3);
  }
}

TEST_CASE("VVH at line centre is dominated by the Lorentz peak") {
  const double fc = 556.9e9, al = 3e9, t = 296.0;
  const double vvh = van_vleck_huber_shape(fc, fc, al, t);
  CHECK(vvh == doctest::Approx(1.0 / (std::numbers::pi * al)).epsilon(1e-3));
  CHECK(vvh > 1.0 / (std::numbers::pi * al));
  // VVW and VVH coincide to first order at the centre.
  CHECK(van_vleck_weisskopf_shape(fc, fc, al) == doctest::Approx(vvh).epsilon(1e-3));
}

TEST_CASE("shape selection rule") {
  CHECK(select_line_shape(6.0, 1.0) == LineShapeKind::VanVleckHuber);
  CHECK(select_line_shape(5.0, 1.0) == LineShapeKind::Voigt);
  CHECK(select_line_shape(1.0, 1.0) == LineShapeKind::Voigt);
  CHECK(select_line_shape(1.0, 5.0) == LineShapeKind::Voigt);
  CHECK(select_line_shape(1.0, 6.0) == LineShapeKind::Doppler);
}

TEST_CASE("centre kappa across the Lorentz boundary") {
  // Sweeping pressure moves a line through alpha_L = 5 alpha_D. The Voigt
  // and VVH peaks differ only by the small Gaussian admixture there.
  SpectralLine l = water_line();
  const double t = 250.0;
  const double ad = doppler_halfwidth(l, t);
  auto centre = [&](double p) {
    return line_shape(l, line_center(l, p), p, t, 0.0) * p;
  };
  double p_edge = 5 * ad / lorentz_halfwidth(l, 1.0, t, 0.0);
  const double below = centre(p_edge * (1 - 1e-9));
  const double above = centre(p_edge * (1 + 1e-9));
  CHECK(std::abs(above / below - 1) < 0.05);
}

TEST_CASE("centre kappa across the Doppler boundary" * doctest::should_fail()) {
  // At alpha_D = 5 alpha_L the pure Gaussian drops the Lorentz share of the
  // Voigt peak, a jump of about 16%. Recorded as a known discontinuity of
  // the selection rule.
  SpectralLine l = water_line();
  const double t = 250.0;
  const double ad = doppler_halfwidth(l, t);
  auto centre = [&](double p) { return line_shape(l, line_center(l, p), p, t, 0.0) * p; };
  double p_edge = ad / 5 / lorentz_halfwidth(l, 1.0, t, 0.0);
  const double below = centre(p_edge * (1 - 1e-9));
  const double above = centre(p_edge * (1 + 1e-9));
  CHECK(std::abs(above / below - 1) < 0.05);
}

TEST_CASE("number density at standard conditions") {
  CHECK(number_density(reference_pressure, 296.0) == doctest::Approx(2.479e25).epsilon(1e-3));
  CHECK(number_density(2 * reference_pressure, 296.0, 0.3) ==
        2 * number_density(reference_pressure, 296.0, 0.3));
}

TEST_CASE("single-line kappa against a scalar oracle") {
  SpectralLine l = water_line();
  LineCatalog cat({l}, "single");
  AtmosphericState st{0.0, reference_pressure, 296.0, {{1, 0.01}}};
  Eigen::ArrayXd grid(5);
  grid << 400e9, 540e9, 556.9e9, 557.2e9, 700e9;
  AbsorptionSpectrum s = absorption_coefficient(cat, st, grid);
  const oracle::LineParams p{l.nu0, l.intensity, l.gamma_air, l.gamma_self, l.n_air, l.delta_air};
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double ref = oracle::kappa_vvh_at_t0(p, reference_pressure, 0.01, grid[i]);
    CAPTURE(grid[i]);
    CHECK(std::abs(s.kappa[i] / ref - 1) < 1e-10);
  }
}

TEST_CASE("absorption spectrum properties") {
  CatalogLoad load = load_bundled_catalog({0.0, 1e6, {}, {}});
  Eigen::ArrayXd grid = Eigen::ArrayXd::LinSpaced(181, 100e9, 1000e9);

  SUBCASE("empty catalog") {
    AbsorptionSpectrum s = absorption_coefficient(LineCatalog{}, profile_at(0.0), grid);
    CHECK((s.kappa == 0.0).all());
  }
  SUBCASE("non-negative at every altitude") {
    for (double z : {0.0, 5000.0, 11000.0, 30000.0, 80000.0, 150000.0}) {
      AbsorptionSpectrum s = absorption_coefficient(load.catalog, profile_at(z), grid);
      CHECK((s.kappa >= 0.0).all());
    }
  }
  SUBCASE("557 GHz water line dominates near 557 GHz at sea level") {
    Eigen::ArrayXd g(3);
    g << 500e9, 556.94e9, 620e9;
    AbsorptionSpectrum s = absorption_coefficient(load.catalog, profile_at(0.0), g);
    CHECK(s.kappa[1] > 10 * s.kappa[0]);
    CHECK(s.kappa[1] > 10 * s.kappa[2]);
  }
  SUBCASE("density doubles with pressure") {
    AtmosphericState a = profile_at(0.0);
    AtmosphericState b = a;
    b.pressure *= 2;
    CHECK(number_density(b.pressure, b.temperature, b.vmr(1)) ==
          2 * number_density(a.pressure, a.temperature, a.vmr(1)));
  }
  SUBCASE("wing cutoff drops distant lines") {
    SpectralLine l = water_line();
    LineCatalog one({l}, "one");
    Eigen::ArrayXd g(2);
    g << 100e9, 556.9e9;
    AbsorptionOptions narrow;
    narrow.wing_cutoff = 100e9;
    AbsorptionSpectrum s = absorption_coefficient(one, profile_at(0.0), g, narrow);
    CHECK(s.kappa[0] == 0.0);
    CHECK(s.kappa[1] > 0.0);
  }
  SUBCASE("abundance conventions") {
    SpectralLine l = water_line();
    Eigen::ArrayXd g(1);
    g << 556.9e9;
    const double base =
        absorption_coefficient(LineCatalog({l}, "x"), profile_at(0.0), g).kappa[0];
    l.abundance = l.abundance / 2;
    CHECK(absorption_coefficient(LineCatalog({l}, "x"), profile_at(0.0), g).kappa[0] ==
          doctest::Approx(base / 2).epsilon(1e-12));
    AbsorptionOptions raw;
    raw.intensities_include_abundance = false;
    CHECK(absorption_coefficient(LineCatalog({l}, "x"), profile_at(0.0), g, raw).kappa[0] ==
          doctest::Approx(base * 0.997317 / 2).epsilon(1e-12));
  }
  SUBCASE("grid must increase") {
    Eigen::ArrayXd g(3);
    g << 1e11, 1e11, 2e11;
    CHECK_THROWS_AS(absorption_coefficient(load.catalog, profile_at(0.0), g), Error);
  }
}
