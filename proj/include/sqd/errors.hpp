#pragma once

#include <stdexcept>
#include <string>

namespace sqd {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text (FCIDUMP, sample files, config files).
struct ParseError : Error {
  using Error::Error;
};

// A bitstring whose length disagrees with the declared orbital count.
struct LengthMismatch : ParseError {
  using ParseError::ParseError;
};

// Inconsistent particle/orbital bookkeeping (NELEC/MS2, orbital count > 64).
struct SpecError : Error {
  using Error::Error;
};

// Operands belong to different systems (orbital count or electron counts differ).
struct SpecMismatch : Error {
  using Error::Error;
};

// A requested enumeration or solve exceeds the configured dimension cap.
struct CapExceeded : Error {
  using Error::Error;
};

struct EmptyBasis : Error {
  using Error::Error;
};

// Orbital count outside the supported routing range.
struct UnsupportedSize : Error {
  using Error::Error;
};

}  // namespace sqd
