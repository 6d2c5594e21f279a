#pragma once

#include <stdexcept>
#include <string>

namespace andovar {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses onto exit codes (input 1, validation 2, numeric 3).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: wrong shapes, non-finite entries, bad arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

// Input is well formed but violates a mathematical hypothesis
// (commutation, contractivity, purity).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A numerical routine failed or produced a result outside its contract.
class NumericError : public Error {
 public:
  using Error::Error;
};

// I - zD is numerically singular at the requested point.
class BoundaryPoleError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace andovar
