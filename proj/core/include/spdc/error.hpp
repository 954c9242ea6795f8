#pragma once

#include <stdexcept>
#include <string>

namespace spdc {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a model (wavelength outside the Sellmeier
/// window, unsatisfiable purity condition, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A precondition on the inputs was violated.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An iterative or adaptive numerical procedure failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double coarse, double fine)
      : Error(what), coarse_(coarse), fine_(fine) {}
  explicit ConvergenceError(const std::string& what) : Error(what) {}

  double coarse_estimate() const noexcept { return coarse_; }
  double fine_estimate() const noexcept { return fine_; }

 private:
  double coarse_ = 0.0;
  double fine_ = 0.0;
};

/// Internal consistency check failed (e.g. heralding efficiency above one).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace spdc
