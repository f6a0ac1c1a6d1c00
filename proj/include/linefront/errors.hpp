#pragma once

#include <stdexcept>
#include <string>

namespace linefront {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
  using Error::Error;
};

/// alpha >= 1/2: neither the stationary nor the travelling solution exists.
class NoSolutionError : public Error {
  using Error::Error;
};

/// k == 0 was passed to an operation that requires degradation; callers
/// should switch to the dedicated zero-degradation code path.
class ZeroDegradationError : public Error {
  using Error::Error;
};

/// Adaptive quadrature exhausted its subdivision budget. Carries the best
/// value obtained so far together with its error estimate.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, double value, double err_est)
      : Error(what), value_(value), err_est_(err_est) {}
  double value() const noexcept { return value_; }
  double err_est() const noexcept { return err_est_; }

 private:
  double value_;
  double err_est_;
};

/// The integrand of a semi-infinite integral does not decay (rate <= 0),
/// so the integral diverges.
class TailDivergenceError : public Error {
  using Error::Error;
};

/// Root bracket endpoints do not have opposite signs.
class InvalidBracketError : public Error {
  using Error::Error;
};

/// A scan for a sign change found none on the searched range.
class NoBracketError : public Error {
  using Error::Error;
};

/// Simulation-side failures.
class SimulationError : public Error {
  using Error::Error;
};

class CflViolationError : public SimulationError {
  using SimulationError::SimulationError;
};

class NonFiniteError : public SimulationError {
  using SimulationError::SimulationError;
};

/// Front entered the guard band near an x edge; the run result is invalid.
class FrontEscapeError : public SimulationError {
  using SimulationError::SimulationError;
};

class InsufficientDataError : public Error {
  using Error::Error;
};

}  // namespace linefront
