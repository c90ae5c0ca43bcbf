"""Smoke tests for the python bindings."""

import math

import pytest

import dicke


def test_critical_coupling():
    assert dicke.ModelParams(1.0, 1.0, 2, 0.0).critical_coupling() == 0.5
    assert dicke.ModelParams(4.0, 1.0, 2, 0.0).critical_coupling() == 1.0


def test_parameter_validation():
    with pytest.raises(ValueError):
        dicke.ModelParams(omega=-1.0)


def test_basis_enumerate():
    basis = dicke.basis_enumerate(1, 0)
    assert basis == [(0, -0.5), (0, 0.5)]
    assert len(dicke.basis_enumerate(1000, 8)) == 9009


def test_displaced_overlap():
    assert dicke.displaced_fock_overlap(0, 0, 0.7) == pytest.approx(
        math.exp(-0.245), abs=1e-14
    )
    assert dicke.displaced_fock_overlap(2, 5, 0.0) == 0.0


def test_ground_state_free_limit():
    params = dicke.ModelParams(n_atoms=2, gamma=0.0)
    psi = dicke.ground_state_ecs(params, 6)
    assert psi.energy == pytest.approx(-1.0, abs=1e-12)
    report = dicke.excitation_distribution(psi)
    assert report.p_n[0] == pytest.approx(1.0, abs=1e-12)
    assert report.delta_p == pytest.approx(0.0, abs=1e-14)


def test_cross_basis_energies_agree():
    params = dicke.ModelParams(n_atoms=2, gamma=0.45)
    psi = dicke.ground_state_ecs(params, 30)
    energy, vector, cutoff = dicke.fock_ground_state(params, 120)
    assert psi.energy == pytest.approx(energy, abs=1e-10)
    assert vector.shape == ((120 + 1) * 3,)


def test_fidelity_and_susceptibility():
    params = dicke.ModelParams(n_atoms=4)
    a = dicke.ground_state_ecs(params.with_gamma(0.50), 10)
    b = dicke.ground_state_ecs(params.with_gamma(0.51), 10)
    f = dicke.fidelity(a, b)
    assert 0.0 < f <= 1.0
    assert dicke.fidelity(a, a) == pytest.approx(1.0, abs=1e-14)
    chi = dicke.susceptibility(a, b, 0.01)
    assert chi >= 0.0
    assert dicke.specific_susceptibility(chi, chi) == 0.0


def test_sweep_and_critical_point():
    params = dicke.ModelParams(n_atoms=8)
    cfg = dicke.SweepConfig()
    cfg.gamma_start = 0.35
    cfg.gamma_end = 0.75
    cfg.dgamma = 0.02
    cfg.n_max = 14
    cfg.workers = 2
    result = dicke.run_sweep(params, cfg)
    assert len(result.points) == 20
    assert not result.failures
    gammas = [p.gamma for p in result.points]
    assert gammas == sorted(gammas)
    critical = dicke.locate_critical(result.points, cfg, 8)
    assert cfg.gamma_start < critical.gamma_max < cfg.gamma_end
    assert critical.chi_max > 0.0
    assert 0.0 < critical.f_min <= 1.0


def test_sweep_deterministic():
    params = dicke.ModelParams(n_atoms=4)
    cfg = dicke.SweepConfig()
    cfg.gamma_start = 0.4
    cfg.gamma_end = 0.6
    cfg.dgamma = 0.02
    cfg.n_max = 10
    cfg.workers = 1
    once = [(p.gamma, p.fidelity, p.chi_f) for p in dicke.run_sweep(params, cfg).points]
    cfg.workers = 3
    again = [(p.gamma, p.fidelity, p.chi_f) for p in dicke.run_sweep(params, cfg).points]
    assert once == again


def test_fit_recovery():
    points = [
        dicke.CriticalPoint(
            n_atoms=n,
            gamma_max=0.5 + 10.0 ** (-0.285094 - 0.668233 * math.log10(n)),
            f_min=0.99,
            chi_max=1.0,
        )
        for n in (100, 200, 400, 800)
    ]
    fit = dicke.fit_gamma_exponent(points, 0.5)
    assert fit.exponent == pytest.approx(0.668233, abs=1e-12)
    assert fit.rsq == pytest.approx(1.0, abs=1e-12)
