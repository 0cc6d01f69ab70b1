#include <algorithm>
#include <array>
#include <string>

#include "thz/catalog.hpp"

namespace thz {
namespace {

// Natural abundances and masses follow the HITRAN isotopologue table.
constexpr std::array<IsotopologueInfo, 40> kIsotopologues{{
    {1, 1, 0.997317, 18.010565},
    {1, 2, 1.99983e-3, 20.014811},
    {1, 3, 3.71884e-4, 19.014780},
    {1, 4, 3.10693e-4, 19.016740},
    {1, 5, 6.23003e-7, 21.020985},
    {1, 6, 1.15853e-7, 20.020956},
    {1, 7, 2.41974e-8, 20.022915},
    {2, 1, 0.984204, 43.989830},
    {2, 2, 1.10574e-2, 44.993185},
    {2, 3, 3.94707e-3, 45.994076},
    {2, 4, 7.33989e-4, 44.994045},
    {2, 5, 4.43446e-5, 46.997431},
    {2, 6, 8.24623e-6, 45.997400},
    {2, 7, 3.95734e-6, 47.998322},
    {2, 8, 1.47180e-6, 46.998291},
    {3, 1, 0.992901, 47.984745},
    {3, 2, 3.98194e-3, 49.988991},
    {3, 3, 1.99097e-3, 49.988991},
    {3, 4, 7.40475e-4, 48.988960},
    {3, 5, 3.70237e-4, 48.988960},
    {4, 1, 0.990333, 44.001062},
    {4, 2, 3.64093e-3, 44.998096},
    {4, 3, 3.64093e-3, 44.998096},
    {4, 4, 1.98582e-3, 46.005308},
    {4, 5, 3.69280e-4, 45.005278},
    {5, 1, 0.986544, 27.994915},
    {5, 2, 1.10836e-2, 28.998270},
    {5, 3, 1.97822e-3, 29.999161},
    {5, 4, 3.67867e-4, 28.999130},
    {5, 5, 2.22250e-5, 31.002516},
    {5, 6, 4.13292e-6, 30.002485},
    {6, 1, 0.988274, 16.031300},
    {6, 2, 1.11031e-2, 17.034655},
    {6, 3, 6.15751e-4, 17.037475},
    {6, 4, 3.69030e-6, 18.040830},
    {7, 1, 0.995262, 31.989830},
    {7, 2, 3.99141e-3, 33.994076},
    {7, 3, 7.42235e-4, 32.994045},
    {22, 1, 0.992687, 28.006148},
    {22, 2, 7.47809e-3, 29.003182},
}};

struct MoleculeName {
  int id;
  std::string_view name;
};

constexpr std::array<MoleculeName, 8> kMolecules{{
    {1, "H2O"}, {2, "CO2"}, {3, "O3"}, {4, "N2O"},
    {5, "CO"}, {6, "CH4"}, {7, "O2"}, {22, "N2"},
}};

}  // namespace

const IsotopologueInfo* find_isotopologue(int molecule_id, int isotopologue_id) {
  auto it = std::find_if(kIsotopologues.begin(), kIsotopologues.end(), [&](const auto& e) {
    return e.molecule_id == molecule_id && e.isotopologue_id == isotopologue_id;
  });
  return it == kIsotopologues.end() ? nullptr : &*it;
}

std::string_view molecule_name(int molecule_id) {
  for (const auto& m : kMolecules) {
    if (m.id == molecule_id) return m.name;
  }
  throw Error(ErrorCode::UnknownSpecies,
              "no molecule with catalog id " + std::to_string(molecule_id));
}

}  // namespace thz
