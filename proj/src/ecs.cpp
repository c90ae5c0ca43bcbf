#include "dicke/ecs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dicke {

double displacement_parameter(const ModelParams& params) {
  return 2.0 * params.gamma / (params.omega * std::sqrt(static_cast<double>(params.n_atoms)));
}

double displaced_fock_overlap(int n_row, int n_col, double beta) {
  if (n_row < 0 || n_col < 0) throw std::invalid_argument("fock labels must be >= 0");
  if (!std::isfinite(beta)) throw std::invalid_argument("beta must be finite");
  if (beta == 0.0) return n_row == n_col ? 1.0 : 0.0;
  // <m|D(b)|n> = <n|D(-b)|m>; reduce to m >= n.
  if (n_row < n_col) {
    std::swap(n_row, n_col);
    beta = -beta;
  }
  const int n = n_col;
  const int k = n_row - n_col;
  const double x = beta * beta;

  // L_n^{(k)}(x) by the three-term recurrence, rescaled on the fly so the
  // binomial growth at large k never overflows.
  double log_scale = 0.0;
  double prev = 0.0;
  double curr = 1.0;
  for (int i = 0; i < n; ++i) {
    const double next = ((2.0 * i + k + 1.0 - x) * curr - (i + k) * prev) / (i + 1.0);
    prev = curr;
    curr = next;
    if (std::abs(curr) > 1e250) {
      curr *= 1e-250;
      prev *= 1e-250;
      log_scale += 250.0 * std::log(10.0);
    }
  }

  const double sign = (beta < 0.0 && (k % 2 != 0)) ? -1.0 : 1.0;
  const double log_pref = 0.5 * (std::lgamma(n + 1.0) - std::lgamma(n_row + 1.0)) +
                          k * std::log(std::abs(beta)) - 0.5 * x + log_scale;
  return sign * std::exp(log_pref) * curr;
}

Eigen::MatrixXd displacement_overlap_matrix(int size, double beta) {
  Eigen::MatrixXd d(size, size);
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) d(r, c) = displaced_fock_overlap(r, c, beta);
  }
  return d;
}

Eigen::MatrixXd jx_eigenbasis(int n_atoms) {
  if (n_atoms < 1) throw std::invalid_argument("n_atoms must be >= 1");
  const int dim = n_atoms + 1;
  const double j = 0.5 * n_atoms;
  Eigen::MatrixXd jx = Eigen::MatrixXd::Zero(dim, dim);
  for (int s = 0; s + 1 < dim; ++s) {
    const double mz = -j + s;
    const double v = 0.5 * std::sqrt(j * (j + 1) - mz * (mz + 1));
    jx(s + 1, s) = jx(s, s + 1) = v;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jx);
  Eigen::MatrixXd r = es.eigenvectors();  // ascending eigenvalues -j..+j
  // Gauge: make <m+1|Jz|m> positive, sweeping up from m = -j.
  for (int c = 0; c + 1 < dim; ++c) {
    double t = 0.0;
    for (int s = 0; s < dim; ++s) t += r(s, c + 1) * (-j + s) * r(s, c);
    if (t < 0.0) r.col(c + 1) = -r.col(c + 1);
  }
  return r;
}

EcsMatrix::EcsMatrix(const ModelParams& params, int n_max, std::size_t ceiling)
    : params_(params), layout_(params.n_atoms, n_max, ceiling) {
  params_.validate();
  const int nb = n_max + 1;
  const int nspin = params.n_atoms + 1;
  const double j = params.spin_j();
  const double g = displacement_parameter(params);

  diag_.resize(static_cast<Eigen::Index>(layout_.dimension()));
  for (int s = 0; s < nspin; ++s) {
    const double m = -j + s;
    const double shift = -4.0 * params.gamma * params.gamma * m * m /
                         (params.n_atoms * params.omega);
    for (int nexc = 0; nexc < nb; ++nexc) {
      diag_(static_cast<Eigen::Index>(layout_.sector_offset(s)) + nexc) =
          params.omega * nexc + shift;
    }
  }

  dblock_ = displacement_overlap_matrix(nb, g);
  spin_c_.resize(params.n_atoms);
  for (int s = 0; s + 1 < nspin; ++s) {
    const double m = -j + s;
    spin_c_[s] = 0.5 * params.omega0 * std::sqrt(j * (j + 1) - m * (m + 1));
  }
}

void EcsMatrix::matvec(const double* x, double* y) const {
  const int nb = layout_.n_max() + 1;
  const int nspin = params_.n_atoms + 1;
  const auto dim = static_cast<Eigen::Index>(layout_.dimension());
  Eigen::Map<const Eigen::VectorXd> xin(x, dim);
  Eigen::Map<Eigen::VectorXd> yout(y, dim);
  yout.array() = diag_.array() * xin.array();
  for (int s = 0; s + 1 < nspin; ++s) {
    const double c = spin_c_[s];
    const auto lo = static_cast<Eigen::Index>(layout_.sector_offset(s));
    const auto hi = lo + nb;
    yout.segment(hi, nb).noalias() += c * (dblock_ * xin.segment(lo, nb));
    yout.segment(lo, nb).noalias() += c * (dblock_.transpose() * xin.segment(hi, nb));
  }
}

void EcsMatrix::apply_even_projector(double* x) const {
  const int nb = layout_.n_max() + 1;
  const int natoms = params_.n_atoms;
  for (int s = 0; 2 * s <= natoms; ++s) {
    const int sflip = natoms - s;
    double* a = x + layout_.sector_offset(s);
    double* b = x + layout_.sector_offset(sflip);
    for (int nexc = 0; nexc < nb; ++nexc) {
      const double sign = ((nexc + natoms) % 2 == 0) ? 1.0 : -1.0;
      if (s == sflip) {
        if (sign < 0.0) a[nexc] = 0.0;
      } else {
        const double sym = 0.5 * (a[nexc] + sign * b[nexc]);
        a[nexc] = sym;
        b[nexc] = sign * sym;
      }
    }
  }
}

Eigen::MatrixXd EcsMatrix::dense() const {
  const auto dim = static_cast<Eigen::Index>(layout_.dimension());
  Eigen::MatrixXd h(dim, dim);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    e(c) = 1.0;
    matvec(e.data(), h.col(c).data());
    e(c) = 0.0;
  }
  return h;
}

EcsMatrix build_ecs_hamiltonian(const ModelParams& params, int n_max, std::size_t ceiling) {
  return EcsMatrix(params, n_max, ceiling);
}

WaveFunction ground_state_ecs(const ModelParams& params, int n_max,
                              const SolverConfig& solver, ParitySector sector,
                              std::size_t ceiling) {
  const EcsMatrix h(params, n_max, ceiling);
  const std::size_t dim = h.dimension();

  MatVec mv;
  if (sector == ParitySector::Even) {
    mv = [&h, dim](const double* x, double* y) {
      std::vector<double> tmp(x, x + dim);
      h.apply_even_projector(tmp.data());
      h.matvec(tmp.data(), y);
      h.apply_even_projector(y);
    };
  } else {
    mv = [&h](const double* x, double* y) { h.matvec(x, y); };
  }

  EigenResult res = lowest_eigenpair(mv, dim, solver);

  WaveFunction psi;
  psi.coeffs = std::move(res.vector);
  if (sector == ParitySector::Even) h.apply_even_projector(psi.coeffs.data());
  double norm = 0.0;
  for (double c : psi.coeffs) norm += c * c;
  norm = std::sqrt(norm);
  for (double& c : psi.coeffs) c /= norm;
  fix_phase(psi.coeffs);
  psi.energy = res.value;
  psi.n_max = n_max;
  psi.params = params;
  psi.degenerate = res.degenerate;
  psi.residual = res.residual;
  psi.iterations = res.iterations;
  return psi;
}

double mean_photon_number(const WaveFunction& psi) {
  const BasisLayout layout = psi.layout();
  const int nb = layout.n_max() + 1;
  const double j = psi.params.spin_j();
  const double g = displacement_parameter(psi.params);
  double acc = 0.0;
  for (int s = 0; s <= psi.params.n_atoms; ++s) {
    const double m = -j + s;
    const double lam = g * m;
    const double* c = psi.coeffs.data() + layout.sector_offset(s);
    for (int nexc = 0; nexc < nb; ++nexc) {
      acc += c[nexc] * c[nexc] * (nexc + lam * lam);
      if (nexc + 1 < nb) {
        // -g m (A + A†) within the sector
        acc -= 2.0 * lam * std::sqrt(nexc + 1.0) * c[nexc + 1] * c[nexc];
      }
    }
  }
  return acc;
}

Eigen::VectorXd ecs_to_fock(const WaveFunction& psi, int photon_cutoff) {
  const BasisLayout layout = psi.layout();
  const int natoms = psi.params.n_atoms;
  const int nb = layout.n_max() + 1;
  const int nf = photon_cutoff + 1;
  const double j = psi.params.spin_j();
  const double g = displacement_parameter(psi.params);

  const Eigen::MatrixXd r = jx_eigenbasis(natoms);  // <mz|m>, z rows, x columns
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(nf) * (natoms + 1));

  for (int s = 0; s <= natoms; ++s) {
    const double m = -j + s;
    // |N>_m = D(-g m)|N> in the raw Fock ladder
    Eigen::MatrixXd dm(nf, nb);
    for (int n = 0; n < nf; ++n) {
      for (int nexc = 0; nexc < nb; ++nexc) {
        dm(n, nexc) = displaced_fock_overlap(n, nexc, -g * m);
      }
    }
    Eigen::Map<const Eigen::VectorXd> cm(psi.coeffs.data() + layout.sector_offset(s), nb);
    const Eigen::VectorXd boson = dm * cm;
    for (int sz = 0; sz <= natoms; ++sz) {
      out.segment(static_cast<Eigen::Index>(sz) * nf, nf) += r(sz, s) * boson;
    }
  }
  return out;
}

NmaxSearch find_minimal_nmax(const ModelParams& params, double tolerance,
                             int nmax_start, int nmax_ceiling,
                             const SolverConfig& solver, std::size_t ceiling) {
  if (nmax_start < 0 || nmax_ceiling < nmax_start) {
    throw std::invalid_argument("need 0 <= nmax_start <= nmax_ceiling");
  }
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  NmaxSearch search;
  for (int candidate = nmax_start; candidate <= nmax_ceiling; ++candidate) {
    const WaveFunction probe = ground_state_ecs(params, candidate + 1, solver,
                                                ParitySector::Even, ceiling);
    const BasisLayout probe_layout = probe.layout();
    double delta_p = 0.0;
    for (int s = 0; s <= params.n_atoms; ++s) {
      const double c = probe.coeffs[probe_layout.sector_offset(s) + candidate + 1];
      delta_p += c * c;
    }
    search.ladder.emplace_back(candidate, delta_p);
    if (delta_p < tolerance) {
      search.converged = true;
      search.n_max = candidate;
      return search;
    }
  }
  return search;
}

}  // namespace dicke
