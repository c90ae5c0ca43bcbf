#pragma once

#include <Eigen/Dense>

#include <utility>
#include <vector>

#include "dicke/eigensolver.hpp"
#include "dicke/model.hpp"

namespace dicke {

/// Per-unit-m displacement of the boson mode, g = 2 gamma / (omega sqrt(N)).
/// The m sector of the ECS basis is built on the oscillator shifted by g*m.
double displacement_parameter(const ModelParams& params);

/// <n_row| D(beta) |n_col> for the real displacement D(beta)=exp(beta(a†-a)),
/// via the associated-Laguerre closed form. Log-gamma prefactors and a scaled
/// recurrence keep it finite well past n = 500.
double displaced_fock_overlap(int n_row, int n_col, double beta);

/// Dense table d(r,c) = <r|D(beta)|c> for r,c < size.
Eigen::MatrixXd displacement_overlap_matrix(int size, double beta);

/// Jx eigenvectors in the Jz basis, columns ordered by ascending eigenvalue
/// m = -j..+j, with phases gauged so <m+1|Jz|m> > 0. This is the spin-side
/// convention used by the ECS assembly.
Eigen::MatrixXd jx_eigenbasis(int n_atoms);

/// The Dicke Hamiltonian over the ECS basis {|N; j, m>}. In the Jx eigenbasis
/// the coupling is diagonal in m; completing the square on the boson mode
/// leaves diagonal entries omega*N - 4 gamma^2 m^2/(N omega) and confines the
/// omega0 Jz term to m <-> m+1 blocks, every one of them the same displacement
/// overlap table d(g) scaled by the spin ladder factor.
class EcsMatrix {
 public:
  EcsMatrix(const ModelParams& params, int n_max,
            std::size_t ceiling = kDefaultDimensionCeiling);

  const BasisLayout& layout() const { return layout_; }
  const ModelParams& params() const { return params_; }
  std::size_t dimension() const { return layout_.dimension(); }

  void matvec(const double* x, double* y) const;

  /// Parity acts on this basis as C_{N,m} -> (-1)^(N + n_atoms) C_{N,-m};
  /// it commutes exactly with the assembled matrix. This projects onto the
  /// even sector, where the ground state lives.
  void apply_even_projector(double* x) const;

  Eigen::MatrixXd dense() const;

  double diagonal_entry(std::size_t k) const { return diag_(static_cast<Eigen::Index>(k)); }
  const Eigen::MatrixXd& coupling_block() const { return dblock_; }
  double spin_ladder_factor(int m_idx) const { return spin_c_.at(m_idx); }

 private:
  ModelParams params_;
  BasisLayout layout_;
  Eigen::VectorXd diag_;
  Eigen::MatrixXd dblock_;       // d(g), shared by every m <-> m+1 block
  std::vector<double> spin_c_;   // (omega0/2) sqrt(j(j+1) - m(m+1)) per block
};

EcsMatrix build_ecs_hamiltonian(const ModelParams& params, int n_max,
                                std::size_t ceiling = kDefaultDimensionCeiling);

enum class ParitySector { Even, Full };

/// Ground state in the ECS basis. Solves within the even-parity sector by
/// default: the exact ground state carries parity +1, and deep in the
/// superradiant regime the opposite-parity partner comes exponentially close
/// in energy, which would otherwise leave the solver an arbitrary mixture.
WaveFunction ground_state_ecs(const ModelParams& params, int n_max,
                              const SolverConfig& solver = {},
                              ParitySector sector = ParitySector::Even,
                              std::size_t ceiling = kDefaultDimensionCeiling);

/// <a†a> of an ECS ground state, expanded through a = A_m - g m per sector.
double mean_photon_number(const WaveFunction& psi);

/// Re-expresses an ECS state in the Fock x Jz basis (FockLayout order) for
/// cross-basis comparisons against the brute-force build.
Eigen::VectorXd ecs_to_fock(const WaveFunction& psi, int photon_cutoff);

struct NmaxSearch {
  bool converged = false;
  int n_max = -1;                                 // smallest accepted truncation
  std::vector<std::pair<int, double>> ladder;     // (candidate n_max, delta_p)
};

/// Finds the smallest n_max whose wave-function precision passes tolerance.
/// The precision of the n_max=K solution is read off the K+1 solve as the
/// probability weight of its top layer.
NmaxSearch find_minimal_nmax(const ModelParams& params, double tolerance,
                             int nmax_start, int nmax_ceiling,
                             const SolverConfig& solver = {},
                             std::size_t ceiling = kDefaultDimensionCeiling);

}  // namespace dicke
