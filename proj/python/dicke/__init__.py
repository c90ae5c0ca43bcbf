"""Exact diagonalization of the finite Dicke model.

Ground states in the extended coherent-state basis, fidelity and
fidelity-susceptibility scans across the superradiant crossover, and the
finite-size scaling analysis on top of them.
"""

from ._core import (
    AnalysisError,
    CollapsePoint,
    CollapseSpread,
    ConvergenceReport,
    CriticalPoint,
    DimensionError,
    FitError,
    ModelParams,
    NmaxSearch,
    ScalingFit,
    ScanPoint,
    SolverConfig,
    SolverError,
    SweepConfig,
    SweepFailure,
    SweepResult,
    WaveFunction,
    __version__,
    analyze_sweep,
    basis_enumerate,
    build_collapse,
    collapse_spread,
    critical_coupling,
    delta_p_exact,
    displaced_fock_overlap,
    excitation_distribution,
    fidelity,
    find_minimal_nmax,
    fit_chi_exponent,
    fit_fmin_quadratic,
    fit_gamma_exponent,
    fock_ground_state,
    ground_state_ecs,
    locate_critical,
    mean_photon_number,
    run_sweep,
    specific_susceptibility,
    susceptibility,
)

__all__ = [
    "AnalysisError",
    "CollapsePoint",
    "CollapseSpread",
    "ConvergenceReport",
    "CriticalPoint",
    "DimensionError",
    "FitError",
    "ModelParams",
    "NmaxSearch",
    "ScalingFit",
    "ScanPoint",
    "SolverConfig",
    "SolverError",
    "SweepConfig",
    "SweepFailure",
    "SweepResult",
    "WaveFunction",
    "__version__",
    "analyze_sweep",
    "basis_enumerate",
    "build_collapse",
    "collapse_spread",
    "critical_coupling",
    "delta_p_exact",
    "displaced_fock_overlap",
    "excitation_distribution",
    "fidelity",
    "find_minimal_nmax",
    "fit_chi_exponent",
    "fit_fmin_quadratic",
    "fit_gamma_exponent",
    "fock_ground_state",
    "ground_state_ecs",
    "locate_critical",
    "mean_photon_number",
    "run_sweep",
    "specific_susceptibility",
    "susceptibility",
]
