#include "dicke/fock.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace dicke {

FockLayout::FockLayout(int n_atoms, int photon_cutoff, std::size_t ceiling)
    : n_atoms_(n_atoms), cutoff_(photon_cutoff) {
  if (n_atoms < 1) throw std::invalid_argument("n_atoms must be >= 1");
  if (photon_cutoff < 1) throw std::invalid_argument("photon_cutoff must be >= 1");
  const std::size_t dim = static_cast<std::size_t>(cutoff_ + 1) * (n_atoms_ + 1);
  if (dim > ceiling) {
    throw dimension_error("fock dimension " + std::to_string(dim) +
                          " exceeds ceiling " + std::to_string(ceiling));
  }
}

std::size_t FockLayout::index_of(FockIndex idx) const {
  const int shifted = idx.twice_mz + n_atoms_;
  if (idx.photons < 0 || idx.photons > cutoff_ || shifted < 0 ||
      shifted > 2 * n_atoms_ || (shifted % 2) != 0) {
    throw std::out_of_range("FockIndex outside basis");
  }
  return static_cast<std::size_t>(shifted / 2) * (cutoff_ + 1) + idx.photons;
}

FockIndex FockLayout::at(std::size_t k) const {
  if (k >= dimension()) throw std::out_of_range("basis index out of range");
  const int nb = cutoff_ + 1;
  return FockIndex{static_cast<int>(k) % nb,
                   2 * (static_cast<int>(k) / nb) - n_atoms_};
}

Eigen::SparseMatrix<double> build_fock_hamiltonian(const ModelParams& params,
                                                   int photon_cutoff,
                                                   std::size_t ceiling) {
  params.validate();
  FockLayout layout(params.n_atoms, photon_cutoff, ceiling);
  const int nb = photon_cutoff + 1;
  const int nspin = params.n_atoms + 1;
  const double j = params.spin_j();
  const double coupling = params.gamma / std::sqrt(static_cast<double>(params.n_atoms));

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(layout.dimension()) * 5);

  auto idx = [&](int n, int s) { return static_cast<int>(s) * nb + n; };

  for (int s = 0; s < nspin; ++s) {
    const double mz = -j + s;
    for (int n = 0; n < nb; ++n) {
      triplets.emplace_back(idx(n, s), idx(n, s), params.omega * n + params.omega0 * mz);
      // (a + a†)(J+ + J-): raise both symmetric partners explicitly so the
      // assembled matrix is symmetric entry by entry.
      if (s + 1 < nspin) {
        const double jf = std::sqrt(j * (j + 1) - mz * (mz + 1));
        if (n + 1 < nb) {
          const double v = coupling * std::sqrt(n + 1.0) * jf;
          triplets.emplace_back(idx(n + 1, s + 1), idx(n, s), v);
          triplets.emplace_back(idx(n, s), idx(n + 1, s + 1), v);
        }
        if (n >= 1) {
          const double v = coupling * std::sqrt(static_cast<double>(n)) * jf;
          triplets.emplace_back(idx(n - 1, s + 1), idx(n, s), v);
          triplets.emplace_back(idx(n, s), idx(n - 1, s + 1), v);
        }
      }
    }
  }

  Eigen::SparseMatrix<double> h(static_cast<int>(layout.dimension()),
                                static_cast<int>(layout.dimension()));
  h.setFromTriplets(triplets.begin(), triplets.end());
  return h;
}

FockGroundState fock_ground_state(const ModelParams& params, int photon_cutoff,
                                  std::size_t ceiling) {
  const Eigen::SparseMatrix<double> h = build_fock_hamiltonian(params, photon_cutoff, ceiling);
  const Eigen::MatrixXd dense = Eigen::MatrixXd(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
  if (es.info() != Eigen::Success) {
    throw solver_error("dense diagonalization failed", 0.0, 0);
  }
  FockGroundState gs;
  gs.energy = es.eigenvalues()(0);
  gs.vector = es.eigenvectors().col(0);
  gs.vector.normalize();
  std::vector<double> tmp(gs.vector.data(), gs.vector.data() + gs.vector.size());
  fix_phase(tmp);
  gs.vector = Eigen::Map<const Eigen::VectorXd>(tmp.data(), tmp.size());
  gs.photon_cutoff = photon_cutoff;
  return gs;
}

int default_photon_cutoff(const ModelParams& params) {
  const double x = 8.0 * params.gamma * params.gamma * params.n_atoms /
                   (params.omega * params.omega);
  return 20 + static_cast<int>(std::ceil(x));
}

FockGroundState fock_ground_state_auto(const ModelParams& params, double energy_tol,
                                       std::size_t ceiling) {
  int cutoff = default_photon_cutoff(params);
  FockGroundState gs = fock_ground_state(params, cutoff, ceiling);
  for (int round = 0; round < 8; ++round) {
    FockGroundState next = fock_ground_state(params, 2 * cutoff, ceiling);
    const double shift = std::abs(next.energy - gs.energy);
    cutoff *= 2;
    gs = std::move(next);
    if (shift < energy_tol) return gs;
  }
  throw solver_error("photon cutoff did not converge", 0.0, 0);
}

double parity_expectation(const Eigen::VectorXd& state, int n_atoms, int photon_cutoff) {
  FockLayout layout(n_atoms, photon_cutoff);
  if (static_cast<std::size_t>(state.size()) != layout.dimension()) {
    throw dimension_error("state length does not match layout");
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < layout.dimension(); ++k) {
    const FockIndex f = layout.at(k);
    const int sidx = (f.twice_mz + n_atoms) / 2;  // mz + j, always integer
    const double sign = ((f.photons + sidx) % 2 == 0) ? 1.0 : -1.0;
    acc += sign * state(static_cast<Eigen::Index>(k)) * state(static_cast<Eigen::Index>(k));
  }
  return acc;
}

}  // namespace dicke
