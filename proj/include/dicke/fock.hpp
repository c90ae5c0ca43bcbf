#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "dicke/model.hpp"

namespace dicke {

/// Basis label in the ordinary photon-number x Jz product basis.
struct FockIndex {
  int photons;
  int twice_mz;

  double mz() const { return 0.5 * twice_mz; }
  friend bool operator==(const FockIndex&, const FockIndex&) = default;
};

/// Index map mirroring the ECS layout: mz outermost ascending, n innermost.
class FockLayout {
 public:
  FockLayout(int n_atoms, int photon_cutoff,
             std::size_t ceiling = kDefaultDimensionCeiling);

  int n_atoms() const { return n_atoms_; }
  int photon_cutoff() const { return cutoff_; }
  std::size_t dimension() const {
    return static_cast<std::size_t>(cutoff_ + 1) * (n_atoms_ + 1);
  }
  std::size_t index_of(FockIndex idx) const;
  FockIndex at(std::size_t k) const;

 private:
  int n_atoms_;
  int cutoff_;
};

/// Brute-force assembly of the Dicke Hamiltonian in the Fock x Jz basis.
/// Exactly symmetric by construction. Reference implementation only; meant
/// for small atom numbers.
Eigen::SparseMatrix<double> build_fock_hamiltonian(
    const ModelParams& params, int photon_cutoff,
    std::size_t ceiling = kDefaultDimensionCeiling);

struct FockGroundState {
  double energy = 0.0;
  Eigen::VectorXd vector;  // FockLayout order, normalized, phase fixed
  int photon_cutoff = 0;
};

/// Lowest eigenpair by dense symmetric diagonalization.
FockGroundState fock_ground_state(const ModelParams& params, int photon_cutoff,
                                  std::size_t ceiling = kDefaultDimensionCeiling);

/// Starting cutoff for the displaced-oscillator occupation at coupling
/// gamma: 20 + ceil(8 gamma^2 n_atoms / omega^2).
int default_photon_cutoff(const ModelParams& params);

/// Doubles the cutoff until the ground energy moves by less than energy_tol.
FockGroundState fock_ground_state_auto(const ModelParams& params,
                                       double energy_tol = 1e-10,
                                       std::size_t ceiling = kDefaultDimensionCeiling);

/// <Pi> with Pi = exp(i pi (a†a + Jz + j)), diagonal in this basis with
/// eigenvalue (-1)^(n + mz + j).
double parity_expectation(const Eigen::VectorXd& state, int n_atoms, int photon_cutoff);

}  // namespace dicke
