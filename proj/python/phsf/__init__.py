"""Stochastic port-Hamiltonian single-file ring dynamics.

Thin Python layer over the C++ core: SDE integration, closed-form spectrum
and stationary covariance, and Monte-Carlo validation harness.
"""

from ._phsf import (
    ConfigError,
    DivergenceReport,
    DriftCheckReport,
    EnsembleConfig,
    InitialCondition,
    LimitCovariance,
    MomentReport,
    NumericalError,
    Parameters,
    RunConfig,
    SimConfig,
    SpectralDecomposition,
    State,
    StationaryCovariance,
    SystemMatrices,
    Trajectory,
    __version__,
    build_matrices,
    dense_spectrum_oracle,
    distances_from_positions,
    divergence_probe,
    drift,
    eigenvalues,
    em_stability_factor,
    em_step,
    hamiltonian,
    hamiltonian_dissipation_rate,
    hamiltonian_drift_check,
    hamiltonian_expected_drift,
    is_asymptotically_stable,
    limit_covariance,
    limit_covariance_constants,
    lyapunov_residual,
    make_uniform_state,
    mean_velocity_statistics,
    mode_factors,
    multiset_distance,
    parse_config,
    potential,
    potential_derivative,
    run_ensemble,
    serialize_config,
    simulate,
    stationary_covariance,
    stationary_v,
    uniform_spacing,
    validate_parameters,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
