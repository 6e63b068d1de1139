#pragma once

#include <stdexcept>
#include <string>

namespace fucikhom {

/// Base class for numerical failures inside the solvers.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The eigenvalue bisection bracket did not straddle the target.
struct BracketFailure : SolverError {
  using SolverError::SolverError;
};

/// The integrator could not meet its local error requirement.
struct StepFailure : SolverError {
  using SolverError::SolverError;
};

/// An iterative solver hit its iteration cap.
struct NonConvergence : SolverError {
  using SolverError::SolverError;
};

/// A greedy subinterval ran past the right endpoint of the domain.
struct ExceedsDomain : SolverError {
  using SolverError::SolverError;
};

/// The upper level of the minimax bisection was infeasible.
struct InfeasibleBracket : SolverError {
  using SolverError::SolverError;
};

/// A measured gap exceeded its theoretical bound.
struct BoundViolation : SolverError {
  using SolverError::SolverError;
};

/// A traced curve failed the expected monotonicity in s.
struct MonotonicityViolation : SolverError {
  using SolverError::SolverError;
};

/// Invalid experiment configuration (CLI / JSON layer).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fucikhom
