"""Equilibria of the finite-horizon SI social-distancing game.

Thin wrapper around the C++ core: closed-form Nash/ESS equilibria of the
delay game, the switching system in decision-potential coordinates, and a
brute-force ODE oracle for validating every closed form.
"""

from sisdg._core import (
    AsymptoticRegime,
    BurdenReport,
    DurationResult,
    EquilibriumResult,
    EquilibriumTrajectory,
    EssReport,
    GameParams,
    MinimizerReport,
    PiecewiseStrategy,
    PotentialState,
    Regime,
    ScenarioConfig,
    SimulationResult,
    TrajectoryRegime,
    TrajectorySegment,
    __version__,
    auxiliary_minimizer_check,
    asymptotic_equilibrium,
    best_response_search,
    burden,
    derivative_check,
    emblematic_disutility,
    equilibrium_trajectory,
    ess_check,
    improvement_over_indifference,
    lambert_w0,
    load_scenario,
    nash_equilibrium,
    nash_equilibrium_bisection,
    nash_residual,
    nondimensionalize,
    peak_duration,
    phi0_of_tf,
    prevalence_at,
    relative_disutility,
    restricted_disutility,
    shadow_value,
    sigma,
    simulate,
    survival_probability,
    switch_time,
    tf_of_phi0,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
