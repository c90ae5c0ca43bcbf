// Cross-checks that need minutes rather than seconds. Kept out of the fast
// suite; ctest runs them under the "slow" label.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "dicke/ecs.hpp"
#include "dicke/fock.hpp"
#include "dicke/observables.hpp"

using namespace dicke;

TEST_CASE("lanczos matches a dense reference at full production size") {
  // N=1000, n_max=8: dimension 9009, the largest matrix in the campaign
  const ModelParams params{1.0, 1.0, 1000, 0.52};
  const EcsMatrix h(params, 8);
  REQUIRE(h.dimension() == 9009);

  const MatVec mv = [&h](const double* x, double* y) { h.matvec(x, y); };
  const EigenResult lanczos = lowest_eigenpair(mv, h.dimension());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> dense;
  dense.compute(h.dense(), Eigen::EigenvaluesOnly);
  REQUIRE(dense.info() == Eigen::Success);

  CHECK(std::abs(lanczos.value - dense.eigenvalues()(0)) < 1e-10);
}

TEST_CASE("ecs energies track the converged fock build up to gamma 0.8") {
  for (int n_atoms : {2, 5, 8}) {
    for (double gamma : {0.2, 0.45, 0.8}) {
      const ModelParams params{1.0, 1.0, n_atoms, gamma};
      const WaveFunction ecs = ground_state_ecs(params, 40);
      const FockGroundState fock = fock_ground_state_auto(params);
      CAPTURE(n_atoms);
      CAPTURE(gamma);
      CHECK(std::abs(ecs.energy - fock.energy) < 1e-9);
    }
  }
}

TEST_CASE("production sweep point at the precursor") {
  // the headline configuration: N=100, n_max=8 near gamma_max
  const ModelParams params{1.0, 1.0, 100, 0.0};
  const WaveFunction a = ground_state_ecs(params.with_gamma(0.523), 8);
  const WaveFunction b = ground_state_ecs(params.with_gamma(0.524), 8);
  const double f = fidelity(a, b);
  const double chi = susceptibility(f, 0.001);
  CHECK(f < 1.0);
  CHECK(chi > 1.5e3);
  CHECK(chi < 2.5e3);

  // the truncation ladder supports n_max = 8 here
  const WaveFunction s9 = ground_state_ecs(params.with_gamma(0.523), 9);
  CHECK(delta_p_exact(a, s9) < 1e-6);
}
