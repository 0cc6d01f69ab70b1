#include <array>
#include <cmath>

#include <fmt/format.h>

#include "thz/absorption.hpp"
#include "thz/constants.hpp"

namespace thz {
namespace {

// ln Q as a quintic in ln(T / 296 K), fitted separately below and above
// 500 K. Generated by tools/datagen/fit_partition_functions.py.
struct PartitionFit {
  int molecule_id;
  std::array<double, 6> low;
  std::array<double, 6> high;
};

constexpr double kSplit = 500.0;
constexpr double kMinT = 70.0;
constexpr double kMaxT = 3000.0;

constexpr std::array<PartitionFit, 7> kFits{{
    {1,
     {5.1623372337e+00, 1.5033660536e+00, 1.2627910724e-02, 2.1588467342e-02,
      1.6441884364e-02, 4.5328989301e-03},
     {5.1844991102e+00, 1.3853619237e+00, 2.5292527662e-01, -2.1766556624e-01,
      1.4106298360e-01, -2.2085845739e-02}},
    {2,
     {5.6564480504e+00, 1.2713700872e+00, 3.3260684012e-01, 1.5810245641e-01,
      4.3090220164e-03, -1.1968720609e-02},
     {5.6380210834e+00, 1.3632253756e+00, 1.6298003871e-01, 3.1203895544e-01,
      -8.1297630651e-02, 5.8310340661e-03}},
    {3,
     {8.1561076864e+00, 1.6745024558e+00, 2.6138983546e-01, 1.7711521627e-01,
      4.6496257501e-02, 1.0152983568e-03},
     {8.1563916995e+00, 1.6856579336e+00, 1.9905191063e-01, 3.3481743172e-01,
      -1.2452448194e-01, 1.4358507786e-02}},
    {4,
     {8.5142076741e+00, 1.3586458250e+00, 3.8508709150e-01, 1.4557397453e-01,
      -1.6008468985e-02, -1.6509441632e-02},
     {8.4963844147e+00, 1.4485882507e+00, 2.1575304108e-01, 2.9177107407e-01,
      -8.1634166313e-02, 6.4295929007e-03}},
    {5,
     {4.6767168647e+00, 1.0002436301e+00, 2.2832356446e-03, 5.5824796383e-03,
      5.0808879626e-03, 1.5529940444e-03},
     {4.6574052205e+00, 1.0924815721e+00, -1.5671721116e-01, 1.1325086028e-01,
      -5.4368640055e-03, -2.4315796679e-03}},
    {6,
     {6.3808207690e+00, 1.5427142879e+00, 1.2108061852e-01, 1.6847832807e-01,
      1.1165604742e-01, 2.7995379195e-02},
     {6.3334232079e+00, 1.7716336487e+00, -3.0341354099e-01, 5.3473412253e-01,
      1.6166083166e-02, -2.0754694461e-02}},
    {7,
     {5.3741706331e+00, 1.0039908227e+00, 1.4189311106e-02, 2.3392385803e-02,
      1.7412138377e-02, 4.7290503957e-03},
     {5.3580857266e+00, 1.0921539100e+00, -1.7385560023e-01, 2.1010741755e-01,
      -5.3565070654e-02, 4.6284685442e-03}},
}};

}  // namespace

double partition_function(int molecule_id, double temperature) {
  if (!(temperature >= kMinT && temperature <= kMaxT)) {
    throw Error(ErrorCode::TemperatureOutOfFitRange,
                fmt::format("partition fit covers {}-{} K, got {} K", kMinT, kMaxT, temperature));
  }
  for (const auto& fit : kFits) {
    if (fit.molecule_id != molecule_id) continue;
    const auto& c = temperature < kSplit ? fit.low : fit.high;
    const double x = std::log(temperature / constants::reference_temperature);
    double lnq = c[5];
    for (int k = 4; k >= 0; --k) lnq = lnq * x + c[k];
    return std::exp(lnq);
  }
  throw Error(ErrorCode::UnknownSpecies,
              fmt::format("no partition function for molecule {}", molecule_id));
}

}  // namespace thz
