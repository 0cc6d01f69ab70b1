#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace thz {

struct TransceiverConfig {
  double tx_power = 1e-3;           // W
  double bandwidth = 5e9;           // Hz
  double center_frequency = 300e9;  // Hz
  double noise_figure = 10.0;       // dB
  double rx_temperature = 296.0;    // K
};

/// x / (e^x - 1) with x = hf / kT: the factor by which the quantum thermal
/// PSD falls below kT.
double quantum_correction(double f, double temperature);

/// hf / (e^{hf/kT} - 1) 10^{NF/10}, W/Hz.
double thermal_noise_psd(double f, double temperature, double noise_figure_db);

/// Mean photon occupation 1 / (e^{hf/kT} - 1).
double photon_occupation(double f, double temperature);

// Brightness temperatures of a layered path. Layers are ordered from the
// receiver outward; layer i has physical temperature T_i and transmittance
// tau_i. Each layer emits (1 - tau_i) and is attenuated by the layers in
// front of it. Sources behind the last layer are not included.

/// Rayleigh-Jeans: sum_i T_i (1 - tau_i) prod_{j<i} tau_j.
double brightness_temperature_rj(const std::vector<double>& temperatures,
                                 const std::vector<double>& tau);

/// Planck: the same recursion on photon occupation, converted back to a
/// temperature through the inverse Planck law at f.
double brightness_temperature_planck(double f, const std::vector<double>& temperatures,
                                     const std::vector<double>& tau);

/// Uniform-temperature path with total transmittance tau.
double brightness_temperature_rj(double temperature, double tau);
double brightness_temperature_planck(double f, double temperature, double tau);

/// Vectorised forms: `layer_tau` is layers x frequencies, same ordering.
Eigen::ArrayXd brightness_temperature_rj(const Eigen::ArrayXd& temperatures,
                                         const Eigen::ArrayXXd& layer_tau);
Eigen::ArrayXd brightness_temperature_planck(const Eigen::ArrayXd& grid,
                                             const Eigen::ArrayXd& temperatures,
                                             const Eigen::ArrayXXd& layer_tau);

/// k_B T_b + thermal noise at the receiver, W/Hz.
Eigen::ArrayXd total_noise_psd(const Eigen::ArrayXd& grid, const Eigen::ArrayXd& brightness,
                               const TransceiverConfig& rx);

/// (P / W) / (PL N) with a flat transmit PSD.
Eigen::ArrayXd snr(const Eigen::ArrayXd& path_loss, const Eigen::ArrayXd& noise_psd,
                   const TransceiverConfig& rx);

/// Trapezoidal integral of log2(1 + SNR) over the grid, bit/s.
double capacity(const Eigen::ArrayXd& grid, const Eigen::ArrayXd& snr);

/// Capacity over [f_lo, f_hi], interpolating SNR linearly at the edges.
double capacity(const Eigen::ArrayXd& grid, const Eigen::ArrayXd& snr, double f_lo,
                double f_hi);

struct Window {
  double center = 0.0;    // Hz
  double capacity = 0.0;  // bit/s
};

/// Best placement of a band of width `bandwidth` with its centre on a grid
/// point and the band fully inside the grid.
Window best_window(const Eigen::ArrayXd& grid, const Eigen::ArrayXd& snr, double bandwidth);

struct LinkBudget {
  Eigen::ArrayXd grid;
  Eigen::ArrayXd path_loss;  // linear loss
  Eigen::ArrayXd noise_psd;  // W/Hz
  Eigen::ArrayXd snr;
  double capacity = 0.0;     // bit/s over the transceiver band
};

enum class Modulation { Bpsk, Qam16 };

Modulation parse_modulation(std::string_view name);

/// Uncoded bit-error probability over AWGN at per-symbol SNR gamma. BPSK:
/// Q(sqrt(2 gamma)); Gray 16-QAM: (3/4) Q(sqrt(gamma / 5)).
double bit_error_probability(Modulation scheme, double snr);

/// Per-symbol SNR (linear) at which the scheme reaches target_bep; 0 when
/// the target is at or above the zero-SNR error rate.
double modulation_threshold(Modulation scheme, double target_bep);

}  // namespace thz
