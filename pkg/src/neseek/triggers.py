"""Event-triggered communication laws.

A player broadcasts (resets its event errors to zero) when its law fires.
The randomized law draws a threshold ``xi`` uniformly from (a_floor, 1) each
evaluation and fires when ``xi > kappa * exp(-c * rho / delta)``, where
``rho`` is the triggering function (event-error energy minus a weighted
disagreement allowance) and ``delta`` an exponentially decaying scale.

Equivalently, in the form used throughout this module,

    fire  <=>  rho > (delta / c) * (ln(kappa) - ln(xi)),

which makes the complementary no-fire inequality hold exactly, float-for-float,
whenever the law stays quiet. Deterministic comparison laws are expressed
through the same right-hand side so that the whole family differs only in how
it thresholds ``rho``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np


class LawKind(str, Enum):
    """Which communication law drives broadcasts."""

    CONTINUOUS = "continuous"
    STATIC = "static"
    DYNAMIC = "dynamic"
    STOCHASTIC = "stochastic"


@dataclass(frozen=True)
class TriggerParams:
    """Parameters shared by the triggering laws.

    kappa > 1 sharpens the firing probability; a_floor in (0, 1) is the lower
    edge of the random threshold's support; c scales each player's sensitivity;
    sigma weights the disagreement allowance; delta0 and eta set the decaying
    scale ``delta0 * exp(-eta * t)``.
    """

    kappa: float
    a_floor: float
    eta: float
    c: np.ndarray
    sigma: np.ndarray
    delta0: np.ndarray

    def __post_init__(self):
        if not self.kappa > 1:
            raise ValueError("kappa must exceed 1")
        if not 0 < self.a_floor < 1:
            raise ValueError("a_floor must lie in (0, 1)")
        if not self.eta > 0:
            raise ValueError("eta must be positive")
        for name in ("c", "sigma", "delta0"):
            v = np.array(getattr(self, name), dtype=float)
            if v.ndim != 1:
                raise ValueError(f"{name} must be a vector")
            if (v <= 0).any():
                raise ValueError(f"{name} entries must be positive")
            v.flags.writeable = False
            object.__setattr__(self, name, v)
        if not len(self.c) == len(self.sigma) == len(self.delta0):
            raise ValueError("c, sigma, delta0 must share one length")

    @property
    def n(self) -> int:
        return len(self.c)


@dataclass(frozen=True)
class TriggerContext:
    """Squared error magnitudes a player sees at one evaluation instant.

    ``action_err_sq`` is the squared gap between the broadcast and current
    action; ``estimate_err_sq`` the squared norm of the broadcast-vs-current
    estimate row; ``disagreement_sq`` the squared norm of the weighted sum of
    broadcast differences against in-neighbors; ``decay`` the current value of
    the decaying scale.
    """

    action_err_sq: float
    estimate_err_sq: float
    disagreement_sq: float
    decay: float
    t: float


def triggering_function(ctx: TriggerContext, sigma_i: float) -> float:
    """Event-error energy minus the weighted disagreement allowance."""
    return ctx.action_err_sq + ctx.estimate_err_sq - sigma_i * ctx.disagreement_sq


def decay_at(params: TriggerParams, i: int, t: float) -> float:
    """Closed-form value of the decaying scale at time t."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    return float(params.delta0[i]) * math.exp(-params.eta * t)


def xi_from_uniform(params: TriggerParams, u: float) -> float:
    """Map a uniform draw u in [0, 1) onto the threshold support (a_floor, 1].

    Chosen so that ``fire(xi) == (u < trigger_probability)`` holds exactly.
    """
    return 1.0 - u * (1.0 - params.a_floor)


def trigger_probability(params: TriggerParams, i: int, rho_val: float, delta: float) -> float:
    """Probability that the randomized law fires at the given margin and scale."""
    ln_kappa = math.log(params.kappa)
    if delta <= 0:
        # fully decayed scale: the law degenerates to a sign test on rho
        return 1.0 if rho_val > 0 else 0.0
    z = float(params.c[i]) * rho_val / delta
    if z <= ln_kappa:
        return 0.0
    if z >= ln_kappa - math.log(params.a_floor):
        return 1.0
    v = params.kappa * math.exp(-z)
    return (1.0 - v) / (1.0 - params.a_floor)


def _fires(params: TriggerParams, i: int, rho_val: float, delta: float, xi: float) -> bool:
    # log-domain comparison; the quiet branch is the exact negation of this test
    return rho_val > (delta / float(params.c[i])) * (math.log(params.kappa) - math.log(xi))


def decide(law: LawKind, params: TriggerParams, i: int, ctx: TriggerContext, u: float) -> bool:
    """Whether player i broadcasts now.

    CONTINUOUS always fires. STATIC is a comparison law that fires once the
    raw event-error energy exceeds the decaying scale (no disagreement
    allowance). DYNAMIC is the deterministic limit of the randomized law with
    the threshold pinned at a_floor. STOCHASTIC fires when the uniform draw u
    falls below ``trigger_probability``, evaluated through the equivalent
    threshold comparison.
    """
    if law is LawKind.CONTINUOUS:
        return True
    if law is LawKind.STATIC:
        scale = ctx.decay / float(params.c[i])
        return ctx.action_err_sq + ctx.estimate_err_sq > scale * (
            math.log(params.kappa) - math.log(params.a_floor)
        )
    rho_val = triggering_function(ctx, float(params.sigma[i]))
    if law is LawKind.DYNAMIC:
        return _fires(params, i, rho_val, ctx.decay, params.a_floor)
    if law is LawKind.STOCHASTIC:
        return _fires(params, i, rho_val, ctx.decay, xi_from_uniform(params, u))
    raise ValueError(f"unknown law {law!r}")
