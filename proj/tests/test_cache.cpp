#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "thz/cache.hpp"
#include "thz/channel.hpp"
#include "thz/scenario.hpp"

using namespace thz;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("thz-cache-" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("sha256 of known inputs") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("catalog digest follows the line data") {
  CatalogLoad load = load_bundled_catalog({0.0, 1e6, {}, {}});
  const std::string d = catalog_digest(load.catalog);
  CHECK(d.size() == 64);
  CHECK(catalog_digest(load.catalog) == d);
  CatalogFilter f{0.0, 1e6, {}, {{{1, 1}, 0.5}}};
  CHECK(catalog_digest(load_bundled_catalog(f).catalog) != d);
  CHECK(load.catalog.sha256() == sha256_hex(bundled_catalog_text()));
}

TEST_CASE("keys separate every input") {
  const std::string digest(64, 'a');
  AtmosphericState st = profile_at(1000.0);
  Eigen::ArrayXd grid = Eigen::ArrayXd::LinSpaced(10, 1e11, 2e11);
  AbsorptionOptions opt;
  const std::string k = SpectrumCache::key(digest, st, grid, opt);
  CHECK(k == SpectrumCache::key(digest, st, grid, opt));
  CHECK(k != SpectrumCache::key(std::string(64, 'b'), st, grid, opt));
  AtmosphericState st2 = st;
  st2.temperature += 1e-9;
  CHECK(k != SpectrumCache::key(digest, st2, grid, opt));
  st2 = st;
  st2.mixing_ratios[1] *= 1.0000001;
  CHECK(k != SpectrumCache::key(digest, st2, grid, opt));
  Eigen::ArrayXd grid2 = grid;
  grid2[3] += 1.0;
  CHECK(k != SpectrumCache::key(digest, st, grid2, opt));
  AbsorptionOptions opt2;
  opt2.wing_cutoff = 500e9;
  CHECK(k != SpectrumCache::key(digest, st, grid, opt2));
  opt2 = opt;
  opt2.intensities_include_abundance = false;
  CHECK(k != SpectrumCache::key(digest, st, grid, opt2));
}

TEST_CASE("store and load round-trip bit-exactly") {
  SpectrumCache cache(scratch("rt"));
  Eigen::ArrayXd v(4);
  v << 1.0 / 3.0, 1e-300, 0.0, 123456.789;
  cache.store("k1", v);
  auto back = cache.load("k1", 4);
  REQUIRE(back);
  CHECK((*back == v).all());
  CHECK_FALSE(cache.load("k1", 5));
  CHECK_FALSE(cache.load("missing", 4));
  // A truncated file is treated as a miss.
  fs::resize_file(cache.directory() / "k1.bin", 12);
  CHECK_FALSE(cache.load("k1", 4));
}

TEST_CASE("engine results do not depend on the cache") {
  Scenario s;
  s.kind = ScenarioKind::E2A;
  s.airplane_altitude = 4000.0;
  s.f_min = 500e9;
  s.f_max = 600e9;
  s.f_step = 5e9;
  s.atmosphere_top = 20'000.0;
  Eigen::ArrayXd grid = make_grid(s.f_min, s.f_max, s.f_step);
  const fs::path dir = scratch("engine");

  LinkEngine plain(s);
  ScenarioResult ref = plain.evaluate(s, grid);

  EngineOptions cached;
  cached.cache_dir = dir;
  {
    LinkEngine cold(s, cached);
    CHECK((cold.evaluate(s, grid).path_loss.total == ref.path_loss.total).all());
  }
  CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}) > 0);
  {
    LinkEngine warm(s, cached);
    CHECK((warm.evaluate(s, grid).path_loss.total == ref.path_loss.total).all());
  }
}
