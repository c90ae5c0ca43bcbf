#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "dicke/ecs.hpp"
#include "dicke/eigensolver.hpp"

using namespace dicke;

namespace {

MatVec diag_op(std::vector<double> d) {
  return [d = std::move(d)](const double* x, double* y) {
    for (std::size_t i = 0; i < d.size(); ++i) y[i] = d[i] * x[i];
  };
}

}  // namespace

TEST_CASE("diagonal matrix") {
  const EigenResult res = lowest_eigenpair(diag_op({3.0, 1.0, 2.0}), 3);
  CHECK(res.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(res.vector[1]) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(res.vector[0]) < 1e-12);
  CHECK(std::abs(res.vector[2]) < 1e-12);
}

TEST_CASE("2x2 off-diagonal") {
  const MatVec mv = [](const double* x, double* y) {
    y[0] = x[1];
    y[1] = x[0];
  };
  const EigenResult res = lowest_eigenpair(mv, 2);
  CHECK(res.value == doctest::Approx(-1.0).epsilon(1e-14));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(res.vector[0]) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
  CHECK(std::abs(res.vector[1]) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
  CHECK(res.vector[0] * res.vector[1] < 0.0);
}

TEST_CASE("lanczos agrees with the dense path") {
  // just past the dense threshold: N=120 gives dimension 1089
  const ModelParams params{1.0, 1.0, 120, 0.52};
  const EcsMatrix h(params, 8);
  const MatVec mv = [&h](const double* x, double* y) { h.matvec(x, y); };

  SolverConfig lanczos_cfg;
  const EigenResult iterative = lowest_eigenpair(mv, h.dimension(), lanczos_cfg);

  SolverConfig dense_cfg;
  dense_cfg.dense_dim_threshold = 4096;  // force the dense path
  const EigenResult dense = lowest_eigenpair(mv, h.dimension(), dense_cfg);

  CHECK(std::abs(iterative.value - dense.value) < 1e-10);
  double dot = 0.0;
  for (std::size_t i = 0; i < h.dimension(); ++i) dot += iterative.vector[i] * dense.vector[i];
  CHECK(std::abs(dot) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("residual certified by an independent matvec") {
  const ModelParams params{1.0, 1.0, 40, 0.55};
  const EcsMatrix h(params, 8);  // dimension 369: dense path
  const MatVec mv = [&h](const double* x, double* y) { h.matvec(x, y); };
  SolverConfig cfg;
  const EigenResult res = lowest_eigenpair(mv, h.dimension(), cfg);

  Eigen::Map<const Eigen::VectorXd> x(res.vector.data(), res.vector.size());
  Eigen::VectorXd hx(x.size());
  mv(x.data(), hx.data());
  CHECK((hx - res.value * x).norm() <= cfg.tol);
  CHECK(x.norm() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("variational bound against random probes") {
  const ModelParams params{1.0, 1.0, 24, 0.6};
  const EcsMatrix h(params, 10);
  const MatVec mv = [&h](const double* x, double* y) { h.matvec(x, y); };
  const EigenResult res = lowest_eigenpair(mv, h.dimension());

  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss;
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd probe(h.dimension());
    for (auto& v : probe.reshaped()) v = gauss(rng);
    probe.normalize();
    Eigen::VectorXd hp(probe.size());
    mv(probe.data(), hp.data());
    CHECK(res.value <= probe.dot(hp) + 1e-12);
  }
}

TEST_CASE("deterministic for a fixed seed") {
  const ModelParams params{1.0, 1.0, 150, 0.52};
  const EcsMatrix h(params, 8);  // dimension 1359: iterative path
  const MatVec mv = [&h](const double* x, double* y) { h.matvec(x, y); };
  SolverConfig cfg;
  cfg.seed = 1234;
  const EigenResult a = lowest_eigenpair(mv, h.dimension(), cfg);
  const EigenResult b = lowest_eigenpair(mv, h.dimension(), cfg);
  double dot = 0.0;
  for (std::size_t i = 0; i < h.dimension(); ++i) dot += a.vector[i] * b.vector[i];
  CHECK(std::abs(dot) >= 1.0 - 1e-12);
  CHECK(a.value == b.value);
}

TEST_CASE("non-convergence reports the best residual") {
  const ModelParams params{1.0, 1.0, 150, 0.52};
  const EcsMatrix h(params, 8);
  const MatVec mv = [&h](const double* x, double* y) { h.matvec(x, y); };
  SolverConfig cfg;
  cfg.tol = 1e-300;  // unreachable
  cfg.max_iter = 40;
  CHECK_THROWS_AS(lowest_eigenpair(mv, h.dimension(), cfg), solver_error);
  try {
    lowest_eigenpair(mv, h.dimension(), cfg);
  } catch (const solver_error& e) {
    CHECK(e.best_residual > 0.0);
    CHECK(e.iterations >= 40);
  }
}

TEST_CASE("config validation") {
  SolverConfig bad_tol;
  bad_tol.tol = 0.0;
  CHECK_THROWS_AS((lowest_eigenpair(diag_op({1.0}), 1, bad_tol)), std::invalid_argument);
  SolverConfig bad_krylov;
  bad_krylov.krylov_dim = 3;
  CHECK_THROWS_AS((lowest_eigenpair(diag_op({1.0}), 1, bad_krylov)), std::invalid_argument);
  CHECK_THROWS_AS((lowest_eigenpair(diag_op({}), 0)), std::invalid_argument);
}

TEST_CASE("start vector is reproducible") {
  const auto a = deterministic_start_vector(64, 99);
  const auto b = deterministic_start_vector(64, 99);
  CHECK(a == b);
  const auto c = deterministic_start_vector(64, 100);
  CHECK(a != c);
}
