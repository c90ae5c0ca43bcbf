#pragma once

#include <stdexcept>
#include <string>

namespace dicke {

/// Requested basis exceeds the configured dimension ceiling, or two objects
/// with incompatible basis layouts were combined.
struct dimension_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Eigensolver exhausted its iteration budget before reaching the residual
/// tolerance. Carries the best residual attained.
struct solver_error : std::runtime_error {
  solver_error(const std::string& what, double best_residual_, int iterations_)
      : std::runtime_error(what), best_residual(best_residual_), iterations(iterations_) {}
  double best_residual;
  int iterations;
};

/// Extremum location failed: extremum on the grid boundary, or the fidelity
/// minimum and susceptibility maximum disagree by more than one grid step.
struct analysis_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Least-squares design unusable (too few points or rank deficient).
struct fit_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dicke
