#pragma once

#include <stdexcept>
#include <string>

namespace aggmd {

/// Bad arguments, grids or configuration values. Maps to CLI exit code 1.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical evaluation could not meet its accuracy contract. Exit code 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when the CRS alternating sum leaves [0,1] beyond tolerance.
class PrecisionError : public NumericalError {
 public:
  PrecisionError(const std::string& what, int precision_bits)
      : NumericalError(what), precision_bits_(precision_bits) {}
  int precision_bits() const noexcept { return precision_bits_; }

 private:
  int precision_bits_;
};

/// File read/write failures, always carrying the offending path. Exit code 3.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace aggmd
