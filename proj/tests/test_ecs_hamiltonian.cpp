#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "dicke/ecs.hpp"
#include "dicke/fock.hpp"
#include "dicke/observables.hpp"

using namespace dicke;

namespace {

// Parity in the ECS layout: C_{N,m} -> (-1)^(N + n_atoms) C_{N,-m}.
Eigen::MatrixXd parity_matrix(int n_atoms, int n_max) {
  const BasisLayout layout(n_atoms, n_max);
  const auto dim = static_cast<Eigen::Index>(layout.dimension());
  Eigen::MatrixXd pi = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t k = 0; k < layout.dimension(); ++k) {
    const EcsIndex idx = layout.at(k);
    const std::size_t flipped = layout.index_of(EcsIndex{idx.n_exc, -idx.twice_m});
    const double sign = ((idx.n_exc + n_atoms) % 2 == 0) ? 1.0 : -1.0;
    pi(static_cast<Eigen::Index>(flipped), static_cast<Eigen::Index>(k)) = sign;
  }
  return pi;
}

}  // namespace

TEST_CASE("displacement parameter") {
  CHECK((displacement_parameter(ModelParams{1.0, 1.0, 4, 0.0})) == 0.0);
  CHECK((displacement_parameter(ModelParams{2.0, 1.0, 4, 0.5})) ==
        doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("zero coupling reduces to the bare spin-boson spectrum") {
  const ModelParams params{1.0, 1.0, 3, 0.0};
  const EcsMatrix h(params, 6);
  CHECK(h.coupling_block() == Eigen::MatrixXd::Identity(7, 7));
  const WaveFunction gs = ground_state_ecs(params, 6);
  CHECK(gs.energy == doctest::Approx(-1.5).epsilon(1e-13));  // -j omega0
}

TEST_CASE("diagonal carries the completed square") {
  const ModelParams params{1.0, 1.0, 4, 0.3};
  const EcsMatrix h(params, 5);
  const BasisLayout layout = h.layout();
  for (std::size_t k = 0; k < layout.dimension(); ++k) {
    const EcsIndex idx = layout.at(k);
    const double m = idx.m();
    const double expected = params.omega * idx.n_exc -
                            4.0 * params.gamma * params.gamma * m * m /
                                (params.n_atoms * params.omega);
    CHECK(h.diagonal_entry(k) == doctest::Approx(expected).epsilon(1e-15));
  }
}

TEST_CASE("assembled matrix is exactly symmetric") {
  const ModelParams params{1.0, 0.9, 5, 0.55};
  const Eigen::MatrixXd dense = EcsMatrix(params, 10).dense();
  CHECK((dense - dense.transpose()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("parity commutes exactly and the ground state is even") {
  for (int n_atoms : {3, 4}) {
    const ModelParams params{1.0, 1.0, n_atoms, 0.6};
    const EcsMatrix h(params, 12);
    const Eigen::MatrixXd dense = h.dense();
    const Eigen::MatrixXd pi = parity_matrix(n_atoms, 12);
    CHECK((pi * dense - dense * pi).cwiseAbs().maxCoeff() == 0.0);
    CHECK((pi * pi - Eigen::MatrixXd::Identity(pi.rows(), pi.cols())).cwiseAbs().maxCoeff() ==
          0.0);

    // full-space solve lands in the even sector on its own at this size
    const WaveFunction gs = ground_state_ecs(params, 12, {}, ParitySector::Full);
    Eigen::Map<const Eigen::VectorXd> v(gs.coeffs.data(), gs.coeffs.size());
    CHECK(v.dot(pi * v) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("even projector is idempotent and preserves the ground state") {
  const ModelParams params{1.0, 1.0, 4, 0.5};
  const EcsMatrix h(params, 10);
  const WaveFunction full = ground_state_ecs(params, 10, {}, ParitySector::Full);
  const WaveFunction even = ground_state_ecs(params, 10, {}, ParitySector::Even);
  CHECK(std::abs(full.energy - even.energy) < 1e-10);
  CHECK(fidelity(full, even) == doctest::Approx(1.0).epsilon(1e-10));

  std::vector<double> twice = even.coeffs;
  h.apply_even_projector(twice.data());
  for (std::size_t i = 0; i < twice.size(); ++i) {
    CHECK(twice[i] == doctest::Approx(even.coeffs[i]).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("oracle equivalence at small scale") {
  const ModelParams params{1.0, 1.0, 2, 0.45};
  const WaveFunction ecs = ground_state_ecs(params, 30);
  const FockGroundState fock = fock_ground_state(params, 120);
  CHECK(std::abs(ecs.energy - fock.energy) < 1e-10);
}

TEST_CASE("cross-basis state overlap") {
  const ModelParams params{1.0, 1.0, 2, 0.7};
  const WaveFunction ecs = ground_state_ecs(params, 30);
  const FockGroundState fock = fock_ground_state(params, 80);
  const Eigen::VectorXd converted = ecs_to_fock(ecs, 80);
  CHECK(converted.norm() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(fock.vector.dot(converted)) >= 1.0 - 1e-9);
}

TEST_CASE("half-integer spin sectors work the same") {
  const ModelParams params{1.0, 1.0, 3, 0.55};
  const WaveFunction ecs = ground_state_ecs(params, 30);
  const FockGroundState fock = fock_ground_state(params, 80);
  CHECK(std::abs(ecs.energy - fock.energy) < 1e-10);
  CHECK(std::abs(fock.vector.dot(ecs_to_fock(ecs, 80))) >= 1.0 - 1e-9);
}

TEST_CASE("ground state at zero coupling has no excitations") {
  const ModelParams params{1.0, 1.0, 2, 0.0};
  const WaveFunction gs = ground_state_ecs(params, 8);
  CHECK(excitation_distribution(gs).p_n[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("ground energy is non-increasing in n_max") {
  const ModelParams params{1.0, 1.0, 6, 0.6};
  double prev = ground_state_ecs(params, 2).energy;
  for (int n_max : {4, 8, 12, 16}) {
    const double e = ground_state_ecs(params, n_max).energy;
    CHECK(e <= prev + 1e-14);
    prev = e;
  }
}

TEST_CASE("truncation doubling at production scale") {
  // Right at gamma_c the n_max=8 state still carries ~1e-8 of weight in its
  // top layer, which costs ~2e-7 in energy; by n_max=16 the ladder is done.
  // (Measured: E8-E16 = 1.77e-7, E16-E32 = 1.4e-13.)
  const ModelParams params{1.0, 1.0, 100, 0.5};
  const double e8 = ground_state_ecs(params, 8).energy;
  const double e16 = ground_state_ecs(params, 16).energy;
  const double e32 = ground_state_ecs(params, 32).energy;
  CHECK(std::abs(e8 - e16) < 1e-6);
  CHECK(std::abs(e16 - e32) < 1e-10);
}

TEST_CASE("mean photon number") {
  const ModelParams free_field{1.0, 1.0, 4, 0.0};
  CHECK(mean_photon_number(ground_state_ecs(free_field, 8)) ==
        doctest::Approx(0.0).epsilon(1e-12).scale(1.0));

  // superradiant side: macroscopic occupation sets in
  const ModelParams super{1.0, 1.0, 100, 0.6};
  CHECK(mean_photon_number(ground_state_ecs(super, 8)) > 1.0);
}

TEST_CASE("jx eigenbasis has the positive-ladder gauge") {
  for (int n_atoms : {2, 5}) {
    const Eigen::MatrixXd r = jx_eigenbasis(n_atoms);
    const double j = 0.5 * n_atoms;
    // columns diagonalize Jx with ascending eigenvalues
    Eigen::MatrixXd jx = Eigen::MatrixXd::Zero(n_atoms + 1, n_atoms + 1);
    for (int s = 0; s + 1 <= n_atoms; ++s) {
      const double mz = -j + s;
      jx(s + 1, s) = jx(s, s + 1) = 0.5 * std::sqrt(j * (j + 1) - mz * (mz + 1));
    }
    const Eigen::MatrixXd diag = r.transpose() * jx * r;
    for (int c = 0; c <= n_atoms; ++c) {
      CHECK(diag(c, c) == doctest::Approx(-j + c).epsilon(1e-12).scale(1.0));
    }
    // <m+1|Jz|m> > 0 in this gauge
    Eigen::VectorXd mz(n_atoms + 1);
    for (int s = 0; s <= n_atoms; ++s) mz(s) = -j + s;
    const Eigen::MatrixXd jz_x = r.transpose() * mz.asDiagonal() * r;
    for (int c = 0; c + 1 <= n_atoms; ++c) {
      const double expected = 0.5 * std::sqrt(j * (j + 1) - (-j + c) * (-j + c + 1));
      CHECK(jz_x(c + 1, c) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("find_minimal_nmax") {
  const ModelParams free_field{1.0, 1.0, 2, 0.0};
  const NmaxSearch trivial = find_minimal_nmax(free_field, 1e-8, 0, 8);
  CHECK(trivial.converged);
  CHECK(trivial.n_max == 0);
  CHECK(trivial.ladder.front().second == doctest::Approx(0.0).epsilon(1e-14).scale(1.0));

  const ModelParams coupled{1.0, 1.0, 4, 0.55};
  const NmaxSearch search = find_minimal_nmax(coupled, 1e-6, 0, 30);
  CHECK(search.converged);
  CHECK(search.n_max > 0);
  // ladder decreases toward convergence
  CHECK(search.ladder.back().second < search.ladder.front().second);

  const NmaxSearch capped = find_minimal_nmax(coupled, 1e-30, 0, 3);
  CHECK_FALSE(capped.converged);
}

TEST_CASE("dimension ceiling propagates") {
  CHECK_THROWS_AS((EcsMatrix(ModelParams{1.0, 1.0, 3000, 0.1}, 3000)), dimension_error);
}
