#pragma once

#include <stdexcept>

namespace beatty {

// Base class for every error the library throws.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed textual input: real-number grammar, set files, CSV, flag values.
struct ParseError : Error {
  using Error::Error;
};

// A parameter violates its contract (alpha <= 0, q = 0, perfect-square d, ...).
struct DomainError : Error {
  using Error::Error;
};

// A decimal input does not carry enough digits to certify the result.
// The caller must supply more digits; the library never guesses.
struct PrecisionExhausted : Error {
  using Error::Error;
};

// Enumeration blow-up guard (finite sums, witness searches, tree expansion).
struct SizeError : Error {
  using Error::Error;
};

// A computed value left the representable or contracted range.
struct RangeError : Error {
  using Error::Error;
};

// A theorem-backed invariant failed: an implementation bug, not bad input.
struct ContractViolation : Error {
  using Error::Error;
};

// Filesystem access failure.
struct IoError : Error {
  using Error::Error;
};

}  // namespace beatty
