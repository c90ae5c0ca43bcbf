#include "dicke/observables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dicke {

namespace {

void require_same_layout(const WaveFunction& a, const WaveFunction& b) {
  if (a.params.n_atoms != b.params.n_atoms || a.n_max != b.n_max ||
      a.coeffs.size() != b.coeffs.size()) {
    throw dimension_error("wave functions live on different basis layouts");
  }
}

}  // namespace

double fidelity(const WaveFunction& psi_a, const WaveFunction& psi_b) {
  require_same_layout(psi_a, psi_b);
  double dot = 0.0;
  for (std::size_t i = 0; i < psi_a.coeffs.size(); ++i) {
    dot += psi_a.coeffs[i] * psi_b.coeffs[i];
  }
  return std::min(std::abs(dot), 1.0);
}

double susceptibility(double fidelity_value, double dgamma) {
  if (!(dgamma > 0.0)) throw std::invalid_argument("dgamma must be > 0");
  return std::max(2.0 * (1.0 - fidelity_value) / (dgamma * dgamma), 0.0);
}

double susceptibility(const WaveFunction& psi_a, const WaveFunction& psi_b,
                      double dgamma) {
  return susceptibility(fidelity(psi_a, psi_b), dgamma);
}

double susceptibility_log(double fidelity_value, double dgamma) {
  if (!(dgamma > 0.0)) throw std::invalid_argument("dgamma must be > 0");
  return -2.0 * std::log(fidelity_value) / (dgamma * dgamma);
}

double specific_susceptibility(double chi_at_max, double chi) {
  if (!(chi > 0.0)) throw std::domain_error("chi must be > 0");
  return (chi_at_max - chi) / chi;
}

ConvergenceReport excitation_distribution(const WaveFunction& psi) {
  const BasisLayout layout = psi.layout();
  const int nb = layout.n_max() + 1;
  ConvergenceReport report;
  report.p_n.assign(nb, 0.0);
  report.n_max_used = layout.n_max();
  for (int s = 0; s <= psi.params.n_atoms; ++s) {
    const double* c = psi.coeffs.data() + layout.sector_offset(s);
    for (int nexc = 0; nexc < nb; ++nexc) report.p_n[nexc] += c[nexc] * c[nexc];
  }
  report.delta_p = report.p_n[layout.n_max()];
  return report;
}

double delta_p_exact(const WaveFunction& psi_small, const WaveFunction& psi_large) {
  if (psi_small.params.n_atoms != psi_large.params.n_atoms ||
      psi_large.n_max != psi_small.n_max + 1) {
    throw dimension_error("delta_p_exact needs truncations n_max and n_max+1 "
                          "over the same atom number");
  }
  const BasisLayout small_layout = psi_small.layout();
  const BasisLayout large_layout = psi_large.layout();
  double overlap = 0.0;  // zero-extension: the top layer of psi_large is unmatched
  for (int s = 0; s <= psi_small.params.n_atoms; ++s) {
    const double* a = psi_small.coeffs.data() + small_layout.sector_offset(s);
    const double* b = psi_large.coeffs.data() + large_layout.sector_offset(s);
    for (int nexc = 0; nexc <= psi_small.n_max; ++nexc) overlap += a[nexc] * b[nexc];
  }
  return 1.0 - std::abs(overlap);
}

}  // namespace dicke
