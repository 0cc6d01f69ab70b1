#include "thz/error.hpp"

namespace thz {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::WrongRecordLength: return "WrongRecordLength";
    case ErrorCode::UnparseableField: return "UnparseableField";
    case ErrorCode::UnknownIsotopologue: return "UnknownIsotopologue";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::AltitudeOutOfRange: return "AltitudeOutOfRange";
    case ErrorCode::InvalidRange: return "InvalidRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnknownSpecies: return "UnknownSpecies";
    case ErrorCode::UnknownSpeciesMass: return "UnknownSpeciesMass";
    case ErrorCode::TemperatureOutOfFitRange: return "TemperatureOutOfFitRange";
    case ErrorCode::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorCode::RayMissesAtmosphere: return "RayMissesAtmosphere";
    case ErrorCode::ZeroElevation: return "ZeroElevation";
    case ErrorCode::MisalignedLayers: return "MisalignedLayers";
    case ErrorCode::UnsupportedScheme: return "UnsupportedScheme";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace thz
