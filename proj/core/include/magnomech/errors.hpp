#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace magnomech {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// The classical working point has no real phonon spectrum (omega_b + 4 chi <= 0)
/// or the squeezing parameter would be complex.
class UnstableWorkingPoint : public Error {
 public:
  UnstableWorkingPoint(const std::string& what, double chi) : Error(what), chi_(chi) {}
  double chi() const noexcept { return chi_; }

 private:
  double chi_;
};

/// Drift matrix is not Hurwitz; carries the spectral abscissa.
class StabilityError : public Error {
 public:
  StabilityError(const std::string& what, double abscissa)
      : Error(what), abscissa_(abscissa) {}
  double abscissa() const noexcept { return abscissa_; }

 private:
  double abscissa_;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class IntegrationError : public NumericError {
 public:
  using NumericError::NumericError;
};

class ReducedModelUnstable : public Error {
 public:
  using Error::Error;
};

/// Covariance matrix violates the uncertainty relation beyond tolerance.
class InvalidState : public Error {
 public:
  using Error::Error;
};

class TruncationError : public Error {
 public:
  using Error::Error;
};

class TraceDriftError : public NumericError {
 public:
  using NumericError::NumericError;
};

class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, int line, std::string key)
      : Error(what), line_(line), key_(std::move(key)) {}
  int line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  int line_;
  std::string key_;
};

}  // namespace magnomech
