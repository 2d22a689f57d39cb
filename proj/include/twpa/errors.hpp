#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace twpa {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input outside the region where a formula is defined (cutoff, stop band, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation at (or within the guard band of) a resonator pole.
class SingularityError : public DomainError {
 public:
  SingularityError(const std::string& what, double pole_hz) : DomainError(what), pole_hz_(pole_hz) {}
  double pole_hz() const { return pole_hz_; }

 private:
  double pole_hz_;
};

/// Non-finite value produced while integrating.
class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& what, std::size_t step) : Error(what), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

/// Fock-space or distribution truncation could not reach the requested tail bound.
class TruncationError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace twpa
