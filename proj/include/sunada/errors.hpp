#pragma once

#include <stdexcept>
#include <string>

namespace sunada {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CapExceeded : Error {
  using Error::Error;
};
struct NotAlmostConjugate : Error {
  using Error::Error;
};
struct NoInvertibleFound : Error {
  using Error::Error;
};
struct IllConditioned : Error {
  using Error::Error;
};
struct MissingPhase : Error {
  using Error::Error;
};
struct MissingPotential : Error {
  using Error::Error;
};
struct NonHermitian : Error {
  using Error::Error;
};
struct LengthMismatch : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct SubgroupNotContained : Error {
  using Error::Error;
};
struct NotNormalizing : Error {
  using Error::Error;
};
struct BadK : Error {
  using Error::Error;
};
struct RNotInvariant : Error {
  using Error::Error;
};
struct ValidationFailed : Error {
  ValidationFailed(const std::string& field, const std::string& what)
      : Error("validation failed at '" + field + "': " + what), field(field) {}
  std::string field;
};

}  // namespace sunada
