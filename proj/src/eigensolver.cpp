#include "dicke/eigensolver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace dicke {

namespace {

constexpr double kDegeneracyGap = 1e-10;

Eigen::VectorXd apply_op(const MatVec& mv, const Eigen::VectorXd& x) {
  Eigen::VectorXd y(x.size());
  mv(x.data(), y.data());
  return y;
}

EigenResult dense_lowest(const MatVec& mv, std::size_t dim, int* matvecs) {
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd a(n, n);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  for (Eigen::Index jcol = 0; jcol < n; ++jcol) {
    e(jcol) = 1.0;
    mv(e.data(), a.col(jcol).data());
    e(jcol) = 0.0;
    ++*matvecs;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success) {
    throw solver_error("dense eigensolver failed", 0.0, *matvecs);
  }
  EigenResult res;
  res.value = es.eigenvalues()(0);
  Eigen::VectorXd v = es.eigenvectors().col(0);
  v.normalize();
  res.residual = (apply_op(mv, v) - res.value * v).norm();
  ++*matvecs;
  res.gap = n > 1 ? es.eigenvalues()(1) - es.eigenvalues()(0)
                  : std::numeric_limits<double>::infinity();
  res.degenerate = res.gap < kDegeneracyGap;
  res.vector.assign(v.data(), v.data() + n);
  res.iterations = *matvecs;
  return res;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(tol > 0.0)) throw std::invalid_argument("solver tol must be > 0");
  if (krylov_dim < 4) throw std::invalid_argument("krylov_dim must be >= 4");
  if (max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
}

std::vector<double> deterministic_start_vector(std::size_t dim, std::uint64_t seed) {
  // Raw 53-bit uniforms rather than std::uniform_real_distribution: the
  // distribution's output is not pinned down by the standard.
  std::mt19937_64 rng(seed);
  std::vector<double> v(dim);
  for (double& x : v) {
    x = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
  }
  return v;
}

EigenResult lowest_eigenpair(const MatVec& matvec, std::size_t dim,
                             const SolverConfig& config) {
  config.validate();
  if (dim == 0) throw std::invalid_argument("dim must be >= 1");

  int matvecs = 0;
  if (dim <= static_cast<std::size_t>(config.dense_dim_threshold)) {
    return dense_lowest(matvec, dim, &matvecs);
  }

  const auto n = static_cast<Eigen::Index>(dim);
  const int m = std::min<int>(config.krylov_dim, static_cast<int>(dim));

  Eigen::MatrixXd q(n, m + 1);
  Eigen::VectorXd alpha(m), beta(m);

  const std::vector<double> start = deterministic_start_vector(dim, config.seed);
  Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(start.data(), n);
  v.normalize();

  double best_residual = std::numeric_limits<double>::infinity();
  double scale = 0.0;  // running estimate of ||H||

  while (true) {
    q.col(0) = v;
    int built = 0;
    bool invariant = false;
    for (int k = 0; k < m && matvecs < config.max_iter; ++k) {
      Eigen::VectorXd w(n);
      matvec(q.col(k).data(), w.data());
      ++matvecs;
      alpha(k) = q.col(k).dot(w);
      w -= alpha(k) * q.col(k);
      if (k > 0) w -= beta(k - 1) * q.col(k - 1);
      // full reorthogonalization, two passes
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i <= k; ++i) w -= q.col(i).dot(w) * q.col(i);
      }
      beta(k) = w.norm();
      scale = std::max({scale, std::abs(alpha(k)), beta(k)});
      built = k + 1;
      if (beta(k) <= 1e-13 * std::max(scale, 1.0)) {
        invariant = true;  // exact invariant subspace
        break;
      }
      q.col(k + 1) = w / beta(k);
    }
    if (built == 0) {
      throw solver_error("lanczos: matvec budget exhausted", best_residual, matvecs);
    }

    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(built, built);
    for (int k = 0; k < built; ++k) {
      t(k, k) = alpha(k);
      if (k + 1 < built) t(k + 1, k) = t(k, k + 1) = beta(k);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const double theta = es.eigenvalues()(0);
    Eigen::VectorXd x = q.leftCols(built) * es.eigenvectors().col(0);
    x.normalize();

    Eigen::VectorXd hx(n);
    matvec(x.data(), hx.data());
    ++matvecs;
    const double residual = (hx - theta * x).norm();
    best_residual = std::min(best_residual, residual);

    if (residual <= config.tol || (invariant && residual <= 1e-11 * std::max(scale, 1.0))) {
      EigenResult res;
      res.value = theta;
      res.vector.assign(x.data(), x.data() + n);
      res.residual = residual;
      res.iterations = matvecs;
      res.gap = built > 1 ? es.eigenvalues()(1) - es.eigenvalues()(0)
                          : std::numeric_limits<double>::infinity();
      res.degenerate = res.gap < kDegeneracyGap;
      return res;
    }
    if (matvecs >= config.max_iter) {
      throw solver_error("lanczos: no convergence within max_iter (best residual " +
                             std::to_string(best_residual) + ")",
                         best_residual, matvecs);
    }
    v = x;  // restart from the best Ritz vector
  }
}

}  // namespace dicke
