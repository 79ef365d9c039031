#pragma once

#include <stdexcept>
#include <string>

namespace cavphase {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A closed-form denominator or linear system is too close to a pole for the
// result to mean anything.
struct NearSingular : Error {
  using Error::Error;
};

// Total output exceeds total input beyond round-off.
struct PassivityViolation : Error {
  using Error::Error;
};

// Trace of the density matrix drifted during integration.
struct NonPhysical : Error {
  using Error::Error;
};

struct UnknownPreset : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct ValidationError : Error {
  using Error::Error;
};

}  // namespace cavphase
