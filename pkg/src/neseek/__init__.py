"""Distributed Nash-equilibrium seeking over directed graphs with
event-triggered communication."""

from .bounds import BoundsReport, alpha_max, beta_min, compute_report, sigma_bound
from .engine import EngineConfig, EngineState, RunResult, TriggerEvent, init, run, step
from .games import (
    ActionInterval,
    GameConstants,
    GameDefinition,
    QuadraticGame,
    SpectrumGame,
    cost,
    estimate_constants,
    partial_gradient,
    project,
    pseudo_gradient,
    spectral_efficiency,
)
from .graphs import (
    DirectedGraph,
    LyapunovPair,
    adjacency_diagonal,
    coupling_matrix,
    is_strongly_connected,
    laplacian,
    lyapunov_pair,
)
from .harness import compare_laws, law_trigger_params, run_ensemble, single_run
from .metrics import (
    EnsembleMetrics,
    RunMetrics,
    aggregate,
    gamma_series,
    interval_stats,
    rate_fit,
)
from .oracle import NeSolution, solve_ne, verify_ne
from .scenario import Scenario, load_scenario
from .triggers import (
    LawKind,
    TriggerContext,
    TriggerParams,
    decay_at,
    decide,
    trigger_probability,
    triggering_function,
)

__version__ = "0.1.0"

__all__ = [
    "ActionInterval",
    "BoundsReport",
    "DirectedGraph",
    "EngineConfig",
    "EngineState",
    "EnsembleMetrics",
    "GameConstants",
    "GameDefinition",
    "LawKind",
    "LyapunovPair",
    "NeSolution",
    "QuadraticGame",
    "RunMetrics",
    "RunResult",
    "Scenario",
    "SpectrumGame",
    "TriggerContext",
    "TriggerEvent",
    "TriggerParams",
    "adjacency_diagonal",
    "aggregate",
    "alpha_max",
    "beta_min",
    "compare_laws",
    "compute_report",
    "cost",
    "coupling_matrix",
    "decay_at",
    "decide",
    "estimate_constants",
    "gamma_series",
    "init",
    "interval_stats",
    "is_strongly_connected",
    "laplacian",
    "law_trigger_params",
    "load_scenario",
    "lyapunov_pair",
    "partial_gradient",
    "project",
    "pseudo_gradient",
    "rate_fit",
    "run",
    "run_ensemble",
    "sigma_bound",
    "single_run",
    "solve_ne",
    "spectral_efficiency",
    "step",
    "trigger_probability",
    "triggering_function",
    "verify_ne",
]
