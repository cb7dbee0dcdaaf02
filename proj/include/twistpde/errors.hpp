#pragma once

#include <stdexcept>
#include <string>

namespace twistpde {

// Thrown when a caller violates a documented precondition (bad order k,
// negative margin, rhs below the solvability threshold, ...).
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Thrown on malformed configs, unknown keys, unparsable expressions.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when an iteration fails to reach its tolerance (Jacobi sweeps,
// Krylov cap, Newton stagnation). Carries the residual that was achieved.
class NumericalError : public std::runtime_error {
public:
  NumericalError(const std::string& what, double achieved_residual)
      : std::runtime_error(what), achieved_residual(achieved_residual) {}
  explicit NumericalError(const std::string& what)
      : std::runtime_error(what), achieved_residual(0.0) {}
  double achieved_residual;
};

// Internal consistency failure; indicates a bug, never a user error.
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace twistpde
