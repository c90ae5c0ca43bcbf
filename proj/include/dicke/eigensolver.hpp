#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "dicke/errors.hpp"

namespace dicke {

/// Applies a symmetric operator:  y = H x  (both of length dim).
using MatVec = std::function<void(const double* x, double* y)>;

struct SolverConfig {
  // Accept when ||H x - theta x|| <= tol with x normalized. A run that
  // reaches an exactly invariant Krylov subspace also stops, at the
  // double-precision floor of roughly 2e-14 * ||H||, which for large ||H||
  // can sit above tol; that is the best any double-precision solve can do.
  double tol = 1e-12;
  int max_iter = 20000;     // total matvec budget across restarts
  int krylov_dim = 128;     // Lanczos restart length
  std::uint64_t seed = 0x5eed;  // deterministic start vector
  int dense_dim_threshold = 1024;  // at or below: materialize and solve densely

  void validate() const;
};

struct EigenResult {
  double value = 0.0;
  std::vector<double> vector;
  double residual = 0.0;
  int iterations = 0;     // matvec count
  double gap = 0.0;       // estimate of (second lowest - lowest)
  bool degenerate = false;  // gap < 1e-10
};

/// Lowest eigenpair of a symmetric operator given only its action. Dense
/// diagonalization for small dimensions, restarted Lanczos with full
/// reorthogonalization otherwise. Deterministic for a fixed config.
EigenResult lowest_eigenpair(const MatVec& matvec, std::size_t dim,
                             const SolverConfig& config = {});

/// The seed-derived start vector used by the iterative path (exposed for
/// reproducibility tests).
std::vector<double> deterministic_start_vector(std::size_t dim, std::uint64_t seed);

}  // namespace dicke
