#include "dicke/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dicke {

void ModelParams::validate() const {
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be > 0");
  if (!(omega0 >= 0.0)) throw std::invalid_argument("omega0 must be >= 0");
  if (n_atoms < 1) throw std::invalid_argument("n_atoms must be >= 1");
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
}

double ModelParams::critical_coupling() const {
  return 0.5 * std::sqrt(omega * omega0);
}

double critical_coupling(const ModelParams& params) {
  return params.critical_coupling();
}

BasisLayout::BasisLayout(int n_atoms, int n_max, std::size_t ceiling)
    : n_atoms_(n_atoms), n_max_(n_max) {
  if (n_atoms < 1) throw std::invalid_argument("n_atoms must be >= 1");
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  const std::size_t dim = static_cast<std::size_t>(n_max + 1) * (n_atoms + 1);
  if (dim > ceiling) {
    throw dimension_error("basis dimension " + std::to_string(dim) +
                          " exceeds ceiling " + std::to_string(ceiling));
  }
}

std::size_t BasisLayout::index_of(EcsIndex idx) const {
  // twice_m runs over {-n_atoms, -n_atoms+2, ..., +n_atoms}
  const int shifted = idx.twice_m + n_atoms_;
  if (idx.n_exc < 0 || idx.n_exc > n_max_ || shifted < 0 || shifted > 2 * n_atoms_ ||
      (shifted % 2) != 0) {
    throw std::out_of_range("EcsIndex outside basis");
  }
  return sector_offset(shifted / 2) + idx.n_exc;
}

EcsIndex BasisLayout::at(std::size_t k) const {
  if (k >= dimension()) throw std::out_of_range("basis index out of range");
  const int nb = n_max_ + 1;
  const int m_idx = static_cast<int>(k) / nb;
  const int n_exc = static_cast<int>(k) % nb;
  return EcsIndex{n_exc, 2 * m_idx - n_atoms_};
}

std::vector<EcsIndex> basis_enumerate(int n_atoms, int n_max, std::size_t ceiling) {
  BasisLayout layout(n_atoms, n_max, ceiling);
  std::vector<EcsIndex> out;
  out.reserve(layout.dimension());
  for (std::size_t k = 0; k < layout.dimension(); ++k) out.push_back(layout.at(k));
  return out;
}

double WaveFunction::coeff(int n_exc, int twice_m) const {
  return coeffs.at(layout().index_of(EcsIndex{n_exc, twice_m}));
}

void fix_phase(std::vector<double>& coeffs) {
  double best = 0.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const double a = std::abs(coeffs[i]);
    if (a > best) {
      best = a;
      arg = i;
    }
  }
  if (!coeffs.empty() && coeffs[arg] < 0.0) {
    for (double& c : coeffs) c = -c;
  }
}

}  // namespace dicke
