"""Fixed-step integration of the coupled action/estimate dynamics.

Each step: (1) every player evaluates its communication law on the current
event errors and, if it fires, re-broadcasts its action and estimate row;
(2) actions follow the projected own-gradient flow evaluated at each
player's local estimate row; (3) estimate rows relax toward the broadcast
field (neighbor estimates plus each neighbor's broadcast action); (4) a
forward Euler update advances the state, and the own-estimate diagonal is
pinned back to the actions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import metrics as metrics_mod
from . import oracle
from .errors import InfeasibleStart, NumericalDivergence
from .games import GameDefinition, gradient_at_estimates
from .graphs import DirectedGraph
from .triggers import (
    LawKind,
    TriggerContext,
    TriggerParams,
    decide,
    triggering_function,
    xi_from_uniform,
)

# State magnitudes beyond this abort the run: the step sizes are unstable.
DIVERGENCE_GUARD = 1e9


@dataclass(frozen=True)
class EngineConfig:
    alpha: float
    beta: float
    horizon: float
    seed: int
    law: LawKind
    dt: float = 0.025
    record_every: int = 1

    def __post_init__(self):
        if self.alpha <= 0 or self.beta <= 0:
            raise ValueError("alpha and beta must be positive")
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.dt > self.horizon:
            raise ValueError("dt must not exceed the horizon")
        if self.record_every < 1:
            raise ValueError("record_every must be >= 1")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise ValueError("seed must fit in 64 unsigned bits")

    @property
    def steps(self) -> int:
        return max(1, int(math.ceil(self.horizon / self.dt - 1e-9)))


@dataclass
class EngineState:
    """Simulation state at one grid instant.

    The estimate matrix keeps row i as player i's view of everyone; its
    diagonal always equals the actions. Broadcast copies hold the most
    recently transmitted values.
    """

    t: float
    step_index: int
    x: np.ndarray
    y: np.ndarray
    x_hat: np.ndarray
    y_hat: np.ndarray
    delta: np.ndarray


@dataclass(frozen=True)
class TriggerEvent:
    t: float
    step_index: int
    player: int
    rho: float
    xi: float


@dataclass(frozen=True)
class Evaluation:
    """One trigger evaluation, kept when evaluation collection is enabled."""

    t: float
    step_index: int
    player: int
    action_err_sq: float
    estimate_err_sq: float
    disagreement_sq: float
    decay: float
    xi: float
    fired: bool


@dataclass
class RunResult:
    times: np.ndarray
    actions: np.ndarray
    err_inf: np.ndarray
    gamma: np.ndarray
    trig: np.ndarray
    events: list[TriggerEvent]
    metrics: "metrics_mod.RunMetrics"
    x_star: np.ndarray
    evaluations: list[Evaluation] | None = None


def init(
    game: GameDefinition,
    graph: DirectedGraph,
    trigger_params: TriggerParams,
    config: EngineConfig,
    x0: np.ndarray,
    y0: np.ndarray,
) -> EngineState:
    """Initial state: broadcasts equal the state, so event errors start at zero.

    The diagonal of y0 is overwritten with x0 to keep own-estimates exact.
    """
    n = graph.n
    x0 = np.array(x0, dtype=float)
    y0 = np.array(y0, dtype=float)
    if x0.shape != (n,):
        raise ValueError(f"x0 must have length {n}")
    if y0.shape != (n, n):
        raise ValueError(f"y0 must be {n}x{n}")
    if trigger_params.n != n:
        raise ValueError("trigger parameters and graph disagree on player count")
    lo, hi = game.bounds
    if ((x0 < lo) | (x0 > hi)).any():
        bad = int(np.argmax((x0 < lo) | (x0 > hi)))
        raise InfeasibleStart(
            f"x0[{bad}]={x0[bad]} outside [{lo[bad]}, {hi[bad]}]"
        )
    y0[np.arange(n), np.arange(n)] = x0
    return EngineState(
        t=0.0,
        step_index=0,
        x=x0,
        y=y0,
        x_hat=x0.copy(),
        y_hat=y0.copy(),
        delta=np.array(trigger_params.delta0, dtype=float),
    )


def step(
    state: EngineState,
    game: GameDefinition,
    graph: DirectedGraph,
    trigger_params: TriggerParams,
    config: EngineConfig,
    rngs: list[np.random.Generator],
    evaluations: list[Evaluation] | None = None,
) -> tuple[EngineState, list[TriggerEvent]]:
    """Advance one grid step; returns the new state and any trigger events.

    Trigger decisions are made before derivatives are computed, so the
    broadcast values entering the estimate dynamics are the latest ones.
    """
    n = graph.n
    weights = graph.weights
    din = graph.in_degrees

    x = state.x
    y = state.y
    x_hat = state.x_hat.copy()
    y_hat = state.y_hat.copy()

    e_x = x_hat - x
    e_y = y_hat - y
    action_err_sq = e_x * e_x
    estimate_err_sq = (e_y * e_y).sum(axis=1)
    disagreement = din[:, None] * y_hat - weights @ y_hat
    disagreement_sq = (disagreement * disagreement).sum(axis=1)

    events: list[TriggerEvent] = []
    for i in range(n):
        u = float(rngs[i].random())
        ctx = TriggerContext(
            action_err_sq=float(action_err_sq[i]),
            estimate_err_sq=float(estimate_err_sq[i]),
            disagreement_sq=float(disagreement_sq[i]),
            decay=float(state.delta[i]),
            t=state.t,
        )
        fired = decide(config.law, trigger_params, i, ctx, u)
        xi = (
            xi_from_uniform(trigger_params, u)
            if config.law is LawKind.STOCHASTIC
            else math.nan
        )
        if fired:
            x_hat[i] = x[i]
            y_hat[i, :] = y[i, :]
            rho = triggering_function(ctx, float(trigger_params.sigma[i]))
            events.append(
                TriggerEvent(t=state.t, step_index=state.step_index, player=i, rho=rho, xi=xi)
            )
        if evaluations is not None:
            evaluations.append(
                Evaluation(
                    t=state.t,
                    step_index=state.step_index,
                    player=i,
                    action_err_sq=ctx.action_err_sq,
                    estimate_err_sq=ctx.estimate_err_sq,
                    disagreement_sq=ctx.disagreement_sq,
                    decay=ctx.decay,
                    xi=xi,
                    fired=fired,
                )
            )

    lo, hi = game.bounds
    grad = gradient_at_estimates(game, y)
    xdot = np.clip(x - config.alpha * grad, lo, hi) - x
    ydot = -config.beta * (
        din[:, None] * y_hat - weights @ y_hat + weights * (y_hat - x_hat[None, :])
    )

    k_new = state.step_index + 1
    t_new = k_new * config.dt
    x_new = x + config.dt * xdot
    y_new = y + config.dt * ydot
    y_new[np.arange(n), np.arange(n)] = x_new

    if max(np.abs(x_new).max(), np.abs(y_new).max()) > DIVERGENCE_GUARD:
        raise NumericalDivergence(
            f"state magnitude exceeded {DIVERGENCE_GUARD:.0e} at t={t_new:.6g}; "
            "reduce alpha, beta, or dt"
        )

    delta_new = trigger_params.delta0 * np.exp(-trigger_params.eta * t_new)
    return (
        EngineState(
            t=t_new,
            step_index=k_new,
            x=x_new,
            y=y_new,
            x_hat=x_hat,
            y_hat=y_hat,
            delta=delta_new,
        ),
        events,
    )


def run(
    game: GameDefinition,
    graph: DirectedGraph,
    trigger_params: TriggerParams,
    config: EngineConfig,
    x0: np.ndarray,
    y0: np.ndarray,
    x_star: np.ndarray | None = None,
    collect_evaluations: bool = False,
    rate_window: tuple[float, float] = (0.0, 10.0),
) -> RunResult:
    """Integrate over the horizon; reproducible bit-for-bit for a fixed seed.

    ``x_star`` defaults to the centralized solver's equilibrium and anchors
    the error series. Each player draws from its own generator, spawned from
    the seed, so per-player streams are independent of one another.
    """
    if x_star is None:
        x_star = oracle.solve_ne(game).x_star
    x_star = np.asarray(x_star, dtype=float)

    n = graph.n
    steps = config.steps
    rngs = [
        np.random.Generator(np.random.PCG64(ss))
        for ss in np.random.SeedSequence(int(config.seed)).spawn(n)
    ]

    state = init(game, graph, trigger_params, config, x0, y0)
    times = np.arange(steps + 1) * config.dt
    actions = np.empty((steps + 1, n))
    err_inf = np.empty(steps + 1)
    trig = np.zeros((steps + 1, n), dtype=np.int8)
    gamma = np.zeros(steps + 1)

    actions[0] = state.x
    err_inf[0] = np.abs(state.x - x_star).max()

    all_events: list[TriggerEvent] = []
    evaluations: list[Evaluation] | None = [] if collect_evaluations else None
    fires = 0
    for k in range(steps):
        state, events = step(state, game, graph, trigger_params, config, rngs, evaluations)
        all_events.extend(events)
        fires += len(events)
        actions[k + 1] = state.x
        err_inf[k + 1] = np.abs(state.x - x_star).max()
        for ev in events:
            trig[k + 1, ev.player] = 1
        gamma[k + 1] = fires / (n * (k + 1))

    run_metrics = metrics_mod.run_metrics(
        events=all_events,
        times=times,
        err_series=err_inf,
        n=n,
        dt=config.dt,
        horizon=config.horizon,
        window=rate_window,
    )
    return RunResult(
        times=times,
        actions=actions,
        err_inf=err_inf,
        gamma=gamma,
        trig=trig,
        events=all_events,
        metrics=run_metrics,
        x_star=x_star,
        evaluations=evaluations,
    )
