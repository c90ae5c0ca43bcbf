#pragma once

#include <vector>

#include "dicke/model.hpp"

namespace dicke {

/// |<psi_a|psi_b>| for ground states over the same basis layout.
double fidelity(const WaveFunction& psi_a, const WaveFunction& psi_b);

/// Fidelity susceptibility 2(1-F)/dgamma^2 (the algebraic form; it avoids the
/// log-of-one cancellation at F ~ 1).
double susceptibility(const WaveFunction& psi_a, const WaveFunction& psi_b,
                      double dgamma);
double susceptibility(double fidelity_value, double dgamma);

/// Logarithmic form -2 ln F / dgamma^2, kept as a cross-check.
double susceptibility_log(double fidelity_value, double dgamma);

/// Specific susceptibility (chi_at_max - chi)/chi, the N-comparable quantity
/// used for the universal collapse.
double specific_susceptibility(double chi_at_max, double chi);

struct ConvergenceReport {
  std::vector<double> p_n;  // probability of N displaced excitations, N = 0..n_max
  double delta_p = 0.0;     // weight of the top retained layer
  int n_max_used = 0;
};

/// P_N = sum_m C_{N,m}^2 and the truncation-precision bound delta_p = P_{n_max}.
ConvergenceReport excitation_distribution(const WaveFunction& psi);

/// Definitional precision 1 - |<psi_small|psi_large>| with the smaller state
/// zero-extended by one layer. Requires psi_large.n_max == psi_small.n_max+1.
double delta_p_exact(const WaveFunction& psi_small, const WaveFunction& psi_large);

}  // namespace dicke
