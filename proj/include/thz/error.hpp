#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace thz {

enum class ErrorCode {
  WrongRecordLength,
  UnparseableField,
  UnknownIsotopologue,
  IoFailure,
  AltitudeOutOfRange,
  InvalidRange,
  InvalidArgument,
  UnknownSpecies,
  UnknownSpeciesMass,
  TemperatureOutOfFitRange,
  DegenerateGeometry,
  RayMissesAtmosphere,
  ZeroElevation,
  MisalignedLayers,
  UnsupportedScheme,
  ConfigError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (and tests) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace thz
