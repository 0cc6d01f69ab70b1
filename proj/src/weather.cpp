#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "thz/channel.hpp"
#include "thz/csv.hpp"
#include "thz/error.hpp"

namespace thz::embedded {
extern const std::string_view itu_p838_rain_csv;
}

namespace thz {
namespace {

struct RainTable {
  std::vector<double> log_f;  // log10 GHz
  std::vector<double> log_kh, log_kv, alpha_h, alpha_v;
};

const RainTable& rain_table() {
  static const RainTable table = [] {
    NumericTable csv = parse_numeric_csv(embedded::itu_p838_rain_csv, "itu_p838_rain.csv");
    const std::size_t f = csv.require("frequency_ghz");
    const std::size_t kh = csv.require("k_h");
    const std::size_t kv = csv.require("k_v");
    const std::size_t ah = csv.require("alpha_h");
    const std::size_t av = csv.require("alpha_v");
    RainTable t;
    for (const auto& row : csv.rows) {
      t.log_f.push_back(std::log10(row[f]));
      t.log_kh.push_back(std::log10(row[kh]));
      t.log_kv.push_back(std::log10(row[kv]));
      t.alpha_h.push_back(row[ah]);
      t.alpha_v.push_back(row[av]);
    }
    return t;
  }();
  return table;
}

}  // namespace

RainCoefficients rain_coefficients(double f) {
  if (!(f > 0.0)) throw Error(ErrorCode::InvalidArgument, "frequency must be positive");
  const RainTable& t = rain_table();
  const double x_raw = std::log10(f / 1e9);
  const bool extrapolated = x_raw > t.log_f.back() || x_raw < t.log_f.front();
  const double x = std::clamp(x_raw, t.log_f.front(), t.log_f.back());

  auto it = std::upper_bound(t.log_f.begin(), t.log_f.end(), x);
  std::size_t k = std::clamp<std::size_t>(static_cast<std::size_t>(it - t.log_f.begin()), 1,
                                          t.log_f.size() - 1) - 1;
  const double w = (x - t.log_f[k]) / (t.log_f[k + 1] - t.log_f[k]);
  auto lerp = [&](const std::vector<double>& v) { return v[k] + w * (v[k + 1] - v[k]); };

  const double kh = std::pow(10.0, lerp(t.log_kh));
  const double kv = std::pow(10.0, lerp(t.log_kv));
  const double ah = lerp(t.alpha_h);
  const double av = lerp(t.alpha_v);
  // Circular polarisation: the tau = 45 deg combination at any elevation.
  const double k_c = 0.5 * (kh + kv);
  const double a_c = (kh * ah + kv * av) / (2.0 * k_c);
  return {k_c, a_c, extrapolated};
}

Attenuation rain_attenuation(double f, double rain_rate, double path) {
  if (rain_rate < 0.0 || path < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "rain rate and path must be non-negative");
  }
  const RainCoefficients c = rain_coefficients(f);
  if (rain_rate == 0.0 || path == 0.0) return {0.0, c.extrapolated};
  return {c.k * std::pow(rain_rate, c.alpha) * path / 1000.0, c.extrapolated};
}

double cloud_specific_attenuation(double f, double temperature) {
  const double f_ghz = f / 1e9;
  const double theta = 300.0 / temperature;
  const double eps0 = 77.66 + 103.3 * (theta - 1.0);
  const double eps1 = 0.0671 * eps0;
  const double eps2 = 3.52;
  const double fp = 20.20 - 146.0 * (theta - 1.0) + 316.0 * (theta - 1.0) * (theta - 1.0);
  const double fs = 39.8 * fp;
  const double rp = f_ghz / fp;
  const double rs = f_ghz / fs;

  const double eps_im = f_ghz * (eps0 - eps1) / (fp * (1.0 + rp * rp)) +
                        f_ghz * (eps1 - eps2) / (fs * (1.0 + rs * rs));
  const double eps_re =
      (eps0 - eps1) / (1.0 + rp * rp) + (eps1 - eps2) / (1.0 + rs * rs) + eps2;
  const double eta = (2.0 + eps_re) / eps_im;
  return 0.819 * f_ghz / (eps_im * (1.0 + eta * eta));
}

Attenuation cloud_attenuation(double f, double density, double path, double temperature) {
  if (density < 0.0 || path < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "cloud density and path must be non-negative");
  }
  if (!(temperature > 0.0) || !(f > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "cloud temperature and frequency must be positive");
  }
  const bool extrapolated = f > 200e9;
  if (density == 0.0 || path == 0.0) return {0.0, extrapolated};
  return {cloud_specific_attenuation(f, temperature) * density * path / 1000.0, extrapolated};
}

}  // namespace thz
