#include "thz/link.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "thz/constants.hpp"
#include "thz/error.hpp"

namespace thz {

using constants::boltzmann;
using constants::planck;

double quantum_correction(double f, double temperature) {
  const double x = planck * f / (boltzmann * temperature);
  return x / std::expm1(x);
}

double photon_occupation(double f, double temperature) {
  return 1.0 / std::expm1(planck * f / (boltzmann * temperature));
}

double thermal_noise_psd(double f, double temperature, double noise_figure_db) {
  if (!(f > 0.0) || !(temperature > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "thermal noise needs positive f and T");
  }
  return boltzmann * temperature * quantum_correction(f, temperature) *
         std::pow(10.0, noise_figure_db / 10.0);
}

double brightness_temperature_rj(const std::vector<double>& temperatures,
                                 const std::vector<double>& tau) {
  if (temperatures.size() != tau.size()) {
    throw Error(ErrorCode::MisalignedLayers, "temperature and transmittance counts differ");
  }
  double tb = 0.0;
  double front = 1.0;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    tb += temperatures[i] * (1.0 - tau[i]) * front;
    front *= tau[i];
  }
  return tb;
}

double brightness_temperature_planck(double f, const std::vector<double>& temperatures,
                                     const std::vector<double>& tau) {
  if (temperatures.size() != tau.size()) {
    throw Error(ErrorCode::MisalignedLayers, "temperature and transmittance counts differ");
  }
  double n = 0.0;
  double front = 1.0;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    n += photon_occupation(f, temperatures[i]) * (1.0 - tau[i]) * front;
    front *= tau[i];
  }
  if (n <= 0.0) return 0.0;
  return planck * f / boltzmann / std::log1p(1.0 / n);
}

double brightness_temperature_rj(double temperature, double tau) {
  return temperature * (1.0 - tau);
}

double brightness_temperature_planck(double f, double temperature, double tau) {
  if (tau >= 1.0) return 0.0;
  const double x = planck * f / (boltzmann * temperature);
  return planck * f / boltzmann / std::log1p(std::expm1(x) / (1.0 - tau));
}

Eigen::ArrayXd brightness_temperature_rj(const Eigen::ArrayXd& temperatures,
                                         const Eigen::ArrayXXd& layer_tau) {
  if (temperatures.size() != layer_tau.rows()) {
    throw Error(ErrorCode::MisalignedLayers, "temperature and transmittance counts differ");
  }
  Eigen::ArrayXd tb = Eigen::ArrayXd::Zero(layer_tau.cols());
  Eigen::ArrayXd front = Eigen::ArrayXd::Ones(layer_tau.cols());
  for (Eigen::Index i = 0; i < layer_tau.rows(); ++i) {
    const Eigen::ArrayXd tau = layer_tau.row(i).transpose();
    tb += temperatures[i] * (1.0 - tau) * front;
    front *= tau;
  }
  return tb;
}

Eigen::ArrayXd brightness_temperature_planck(const Eigen::ArrayXd& grid,
                                             const Eigen::ArrayXd& temperatures,
                                             const Eigen::ArrayXXd& layer_tau) {
  if (temperatures.size() != layer_tau.rows() || grid.size() != layer_tau.cols()) {
    throw Error(ErrorCode::MisalignedLayers, "brightness inputs have inconsistent shapes");
  }
  Eigen::ArrayXd n = Eigen::ArrayXd::Zero(grid.size());
  Eigen::ArrayXd front = Eigen::ArrayXd::Ones(grid.size());
  for (Eigen::Index i = 0; i < layer_tau.rows(); ++i) {
    const Eigen::ArrayXd tau = layer_tau.row(i).transpose();
    const Eigen::ArrayXd occupation =
        1.0 / ((planck / (boltzmann * temperatures[i])) * grid).unaryExpr(
                  [](double x) { return std::expm1(x); });
    n += occupation * (1.0 - tau) * front;
    front *= tau;
  }
  Eigen::ArrayXd tb(grid.size());
  for (Eigen::Index k = 0; k < grid.size(); ++k) {
    tb[k] = n[k] > 0.0 ? planck * grid[k] / boltzmann / std::log1p(1.0 / n[k]) : 0.0;
  }
  return tb;
}

Eigen::ArrayXd total_noise_psd(const Eigen::ArrayXd& grid, const Eigen::ArrayXd& brightness,
                               const TransceiverConfig& rx) {
  if (grid.size() != brightness.size()) {
    throw Error(ErrorCode::MisalignedLayers, "brightness and grid differ in length");
  }
  Eigen::ArrayXd n(grid.size());
  for (Eigen::Index k = 0; k < grid.size(); ++k) {
    n[k] = boltzmann * brightness[k] +
           thermal_noise_psd(grid[k], rx.rx_temperature, rx.noise_figure);
  }
  return n;
}

Eigen::ArrayXd snr(const Eigen::ArrayXd& path_loss, const Eigen::ArrayXd& noise_psd,
                   const TransceiverConfig& rx) {
  if (!(rx.tx_power > 0.0) || !(rx.bandwidth > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "transmit power and bandwidth must be positive");
  }
  const double psd = rx.tx_power / rx.bandwidth;
  return psd / (path_loss * noise_psd);
}

double capacity(const Eigen::ArrayXd& grid, const Eigen::ArrayXd& snr) {
  double c = 0.0;
  for (Eigen::Index k = 1; k < grid.size(); ++k) {
    c += 0.5 * (std::log2(1.0 + snr[k - 1]) + std::log2(1.0 + snr[k])) * (grid[k] - grid[k - 1]);
  }
  return c;
}

double capacity(const Eigen::ArrayXd& grid, const Eigen::ArrayXd& snr, double f_lo,
                double f_hi) {
  if (!(f_hi > f_lo) || grid.size() < 2 || f_lo < grid[0] || f_hi > grid[grid.size() - 1]) {
    throw Error(ErrorCode::InvalidRange,
                fmt::format("band [{}, {}] Hz is not inside the grid", f_lo, f_hi));
  }
  auto rate_at = [&](double f) {
    const double* begin = grid.data();
    const double* end = begin + grid.size();
    auto k = static_cast<Eigen::Index>(std::upper_bound(begin, end, f) - begin);
    k = std::clamp<Eigen::Index>(k, 1, grid.size() - 1);
    const double w = (f - grid[k - 1]) / (grid[k] - grid[k - 1]);
    return std::log2(1.0 + snr[k - 1] + w * (snr[k] - snr[k - 1]));
  };

  double c = 0.0;
  double f_prev = f_lo;
  double r_prev = rate_at(f_lo);
  for (Eigen::Index k = 0; k < grid.size(); ++k) {
    if (grid[k] <= f_lo) continue;
    if (grid[k] >= f_hi) break;
    const double r = std::log2(1.0 + snr[k]);
    c += 0.5 * (r_prev + r) * (grid[k] - f_prev);
    f_prev = grid[k];
    r_prev = r;
  }
  c += 0.5 * (r_prev + rate_at(f_hi)) * (f_hi - f_prev);
  return c;
}

Window best_window(const Eigen::ArrayXd& grid, const Eigen::ArrayXd& snr, double bandwidth) {
  Window best;
  bool found = false;
  const double lo = grid.size() > 0 ? grid[0] : 0.0;
  const double hi = grid.size() > 0 ? grid[grid.size() - 1] : 0.0;
  for (Eigen::Index k = 0; k < grid.size(); ++k) {
    const double a = grid[k] - 0.5 * bandwidth;
    const double b = grid[k] + 0.5 * bandwidth;
    if (a < lo || b > hi) continue;
    const double c = capacity(grid, snr, a, b);
    if (!found || c > best.capacity) {
      best = {grid[k], c};
      found = true;
    }
  }
  if (!found) {
    throw Error(ErrorCode::InvalidRange, "grid is narrower than the requested bandwidth");
  }
  return best;
}

Modulation parse_modulation(std::string_view name) {
  if (name == "BPSK" || name == "bpsk") return Modulation::Bpsk;
  if (name == "16QAM" || name == "16qam" || name == "16-QAM") return Modulation::Qam16;
  throw Error(ErrorCode::UnsupportedScheme, fmt::format("unsupported modulation '{}'", name));
}

double bit_error_probability(Modulation scheme, double snr) {
  auto q = [](double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); };
  switch (scheme) {
    case Modulation::Bpsk:
      return q(std::sqrt(2.0 * snr));
    case Modulation::Qam16:
      return 0.75 * q(std::sqrt(snr / 5.0));
  }
  throw Error(ErrorCode::UnsupportedScheme, "unsupported modulation");
}

double modulation_threshold(Modulation scheme, double target_bep) {
  if (!(target_bep > 0.0 && target_bep <= 0.5)) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("target bit-error probability {} outside (0, 0.5]", target_bep));
  }
  if (bit_error_probability(scheme, 0.0) <= target_bep) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (bit_error_probability(scheme, hi) > target_bep) hi *= 2.0;
  // Bisection in log space for uniform relative precision.
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = lo == 0.0 ? 0.5 * hi : std::sqrt(lo * hi);
    (bit_error_probability(scheme, mid) > target_bep ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace thz
