#include "thz/faddeeva.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace thz {
namespace {

constexpr int kTerms = 32;
constexpr int kM = 2 * kTerms;

const double kL = std::sqrt(kTerms / std::numbers::sqrt2);

// Expansion coefficients a_1..a_N: cosine transform of
// exp(-t^2) (L^2 + t^2) sampled at t = L tan(theta/2).
const std::array<double, kTerms>& coefficients() {
  static const std::array<double, kTerms> a = [] {
    std::array<double, 2 * kM - 1> f{};
    for (int k = -kM + 1; k <= kM - 1; ++k) {
      double t = kL * std::tan(0.5 * k * std::numbers::pi / kM);
      f[k + kM - 1] = std::exp(-t * t) * (kL * kL + t * t);
    }
    std::array<double, kTerms> out{};
    for (int m = 1; m <= kTerms; ++m) {
      double sum = 0.0;
      for (int k = -kM + 1; k <= kM - 1; ++k) {
        sum += f[k + kM - 1] * std::cos(std::numbers::pi * k * m / kM);
      }
      out[m - 1] = sum / (2.0 * kM);
    }
    return out;
  }();
  return a;
}

std::complex<double> weideman(std::complex<double> z) {
  const auto& a = coefficients();
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> denom = kL - i * z;
  const std::complex<double> Z = (kL + i * z) / denom;
  std::complex<double> p = a[kTerms - 1];
  for (int m = kTerms - 2; m >= 0; --m) p = p * Z + a[m];
  return 2.0 * p / (denom * denom) + 1.0 / (std::sqrt(std::numbers::pi) * denom);
}

std::complex<double> continued_fraction(std::complex<double> z) {
  // Far from the origin a few levels already reach double precision.
  const int depth = std::abs(z) > 100.0 ? 6 : 20;
  std::complex<double> tail = z;
  for (int k = depth; k >= 1; --k) tail = z - (0.5 * k) / tail;
  return std::complex<double>(0.0, 1.0 / std::sqrt(std::numbers::pi)) / tail;
}

}  // namespace

std::complex<double> faddeeva(std::complex<double> z) {
  if (z.imag() < 0.0) {
    return 2.0 * std::exp(-z * z) - faddeeva(-z);
  }
  if (std::abs(z) > 15.0) return continued_fraction(z);
  return weideman(z);
}

}  // namespace thz
