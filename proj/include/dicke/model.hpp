#pragma once

#include <cstddef>
#include <vector>

#include "dicke/errors.hpp"

namespace dicke {

inline constexpr std::size_t kDefaultDimensionCeiling = 2'000'000;

/// Physical parameters of the Dicke Hamiltonian
///   H = omega a†a + omega0 Jz + (gamma/sqrt(N)) (a + a†)(J+ + J-),
/// with hbar = 1 and the collective spin pinned to j = n_atoms/2.
struct ModelParams {
  double omega = 1.0;   // field frequency
  double omega0 = 1.0;  // atomic level splitting
  int n_atoms = 1;
  double gamma = 0.0;   // coupling strength

  /// Throws std::invalid_argument unless omega > 0, omega0 >= 0,
  /// n_atoms >= 1 and gamma >= 0.
  void validate() const;

  double spin_j() const { return 0.5 * n_atoms; }

  /// Thermodynamic-limit critical coupling sqrt(omega*omega0)/2.
  double critical_coupling() const;

  ModelParams with_gamma(double g) const {
    ModelParams p = *this;
    p.gamma = g;
    return p;
  }
};

double critical_coupling(const ModelParams& params);

/// Basis label in the displaced-boson (ECS) basis: N displaced excitations
/// and the Jx eigenvalue m. m is stored as 2m so half-integer spins compare
/// exactly.
struct EcsIndex {
  int n_exc;
  int twice_m;

  double m() const { return 0.5 * twice_m; }
  friend bool operator==(const EcsIndex&, const EcsIndex&) = default;
};

/// Index map for the truncated ECS basis: m outermost ascending from -j to
/// +j, N innermost from 0 to n_max. dimension = (n_max+1)*(n_atoms+1).
class BasisLayout {
 public:
  BasisLayout(int n_atoms, int n_max, std::size_t ceiling = kDefaultDimensionCeiling);

  int n_atoms() const { return n_atoms_; }
  int n_max() const { return n_max_; }
  std::size_t dimension() const {
    return static_cast<std::size_t>(n_max_ + 1) * (n_atoms_ + 1);
  }

  std::size_t index_of(EcsIndex idx) const;
  EcsIndex at(std::size_t k) const;

  /// Sector offset of a given m (counted from -j): index of (N=0, m).
  std::size_t sector_offset(int m_idx) const {
    return static_cast<std::size_t>(m_idx) * (n_max_ + 1);
  }

  friend bool operator==(const BasisLayout&, const BasisLayout&) = default;

 private:
  int n_atoms_;
  int n_max_;
};

std::vector<EcsIndex> basis_enumerate(int n_atoms, int n_max,
                                      std::size_t ceiling = kDefaultDimensionCeiling);

/// Ground state expanded over a truncated ECS basis. Coefficients are real
/// (the Hamiltonian is real symmetric in this basis), normalized, and the
/// largest-magnitude coefficient is made positive so repeated solves of the
/// same problem are directly comparable.
struct WaveFunction {
  std::vector<double> coeffs;  // BasisLayout order
  double energy = 0.0;
  int n_max = 0;
  ModelParams params;

  bool degenerate = false;   // solver found a gap below 1e-10
  double residual = 0.0;     // ||H psi - E psi|| reported by the solver
  int iterations = 0;

  BasisLayout layout() const { return BasisLayout(params.n_atoms, n_max); }
  double coeff(int n_exc, int twice_m) const;
};

/// Flips the global sign if needed so the largest-magnitude entry is
/// positive. First occurrence wins ties, which keeps the rule deterministic.
void fix_phase(std::vector<double>& coeffs);

}  // namespace dicke
