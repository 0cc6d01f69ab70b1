#include "thz/cache.hpp"

#include <array>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <system_error>
#include <thread>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "thz/absorption.hpp"
#include "thz/atmosphere.hpp"
#include "thz/catalog.hpp"
#include "thz/error.hpp"

namespace thz {
namespace {

constexpr std::array<char, 8> kMagic{'T', 'H', 'Z', 'K', 'A', 'P', '0', '1'};

void append_bytes(std::string& out, const void* data, std::size_t size) {
  out.append(static_cast<const char*>(data), size);
}

void append_double(std::string& out, double v) { append_bytes(out, &v, sizeof v); }

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::IoFailure, "SHA-256 computation failed");
  }
  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

SpectrumCache::SpectrumCache(std::filesystem::path directory) : directory_(std::move(directory)) {
  std::error_code ec;
  std::filesystem::create_directories(directory_, ec);
  if (ec) {
    throw Error(ErrorCode::IoFailure,
                fmt::format("cannot create cache directory {}: {}", directory_.string(),
                            ec.message()));
  }
}

std::string catalog_digest(const LineCatalog& catalog) {
  std::string material;
  material.reserve(catalog.size() * 96);
  for (const SpectralLine& l : catalog.lines()) {
    const std::int32_t ids[2] = {l.molecule_id, l.isotopologue_id};
    append_bytes(material, ids, sizeof ids);
    for (double v : {l.nu0, l.intensity, l.gamma_air, l.gamma_self, l.e_lower, l.n_air,
                     l.delta_air, l.abundance}) {
      append_double(material, v);
    }
  }
  return sha256_hex(material);
}

std::string SpectrumCache::key(std::string_view catalog_digest, const AtmosphericState& state,
                               const Eigen::ArrayXd& grid, const AbsorptionOptions& options) {
  std::string material = "thz-spectrum-v1\n";
  material.append(catalog_digest);
  append_double(material, state.pressure);
  append_double(material, state.temperature);
  for (const auto& [id, vmr] : state.mixing_ratios) {
    std::int32_t species = id;
    append_bytes(material, &species, sizeof species);
    append_double(material, vmr);
  }
  append_double(material, options.wing_cutoff);
  material += options.intensities_include_abundance ? 'w' : 'u';
  const auto n = static_cast<std::uint64_t>(grid.size());
  append_bytes(material, &n, sizeof n);
  append_bytes(material, grid.data(), sizeof(double) * static_cast<std::size_t>(grid.size()));
  return sha256_hex(material);
}

std::optional<Eigen::ArrayXd> SpectrumCache::load(const std::string& key,
                                                  Eigen::Index size) const {
  std::ifstream in(directory_ / (key + ".bin"), std::ios::binary);
  if (!in) return std::nullopt;
  std::array<char, 8> magic{};
  std::uint64_t n = 0;
  in.read(magic.data(), magic.size());
  in.read(reinterpret_cast<char*>(&n), sizeof n);
  if (!in || magic != kMagic || n != static_cast<std::uint64_t>(size)) return std::nullopt;
  Eigen::ArrayXd values(size);
  in.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(sizeof(double) * static_cast<std::size_t>(size)));
  if (!in) return std::nullopt;
  return values;
}

void SpectrumCache::store(const std::string& key, const Eigen::ArrayXd& kappa) const {
  // Write then rename so concurrent readers never see a partial file.
  const auto final_path = directory_ / (key + ".bin");
  auto tmp = final_path;
  tmp += fmt::format(".{}.tmp", std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    const auto n = static_cast<std::uint64_t>(kappa.size());
    out.write(kMagic.data(), kMagic.size());
    out.write(reinterpret_cast<const char*>(&n), sizeof n);
    out.write(reinterpret_cast<const char*>(kappa.data()),
              static_cast<std::streamsize>(sizeof(double) * static_cast<std::size_t>(n)));
    if (!out) {
      throw Error(ErrorCode::IoFailure, "cannot write cache entry " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, final_path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
  }
}

}  // namespace thz
