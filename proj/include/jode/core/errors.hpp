#pragma once

#include <stdexcept>
#include <string>

namespace jode {

/// Malformed model or parameter domain (empty domain, bad prior, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A caller violated a documented precondition of a calibration routine.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Threshold calibration could not produce a consistent set of constants.
class CalibrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical breakdown (non-PSD matrix, negative variance beyond tolerance).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace jode
