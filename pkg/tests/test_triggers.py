import math

import numpy as np
import pytest

from neseek import (
    LawKind,
    TriggerContext,
    TriggerParams,
    decay_at,
    decide,
    trigger_probability,
    triggering_function,
)
from neseek.triggers import xi_from_uniform


def params(n=2, kappa=1.075, a_floor=0.05, eta=10.0, c=1.0, sigma=0.2, delta0=1.0):
    return TriggerParams(
        kappa=kappa,
        a_floor=a_floor,
        eta=eta,
        c=np.full(n, c),
        sigma=np.full(n, sigma),
        delta0=np.full(n, delta0),
    )


def ctx(e_x=0.0, e_y=0.0, cons=0.0, decay=1.0, t=0.0):
    return TriggerContext(
        action_err_sq=e_x,
        estimate_err_sq=e_y,
        disagreement_sq=cons,
        decay=decay,
        t=t,
    )


def random_contexts(rng, count):
    for _ in range(count):
        yield ctx(
            e_x=float(rng.uniform(0, 4)),
            e_y=float(rng.uniform(0, 4)),
            cons=float(rng.uniform(0, 20)),
            decay=float(10.0 ** rng.uniform(-8, 2)),
            t=float(rng.uniform(0, 20)),
        )


def test_params_validation():
    with pytest.raises(ValueError):
        params(kappa=1.0)
    with pytest.raises(ValueError):
        params(a_floor=0.0)
    with pytest.raises(ValueError):
        params(a_floor=1.0)
    with pytest.raises(ValueError):
        params(eta=0.0)
    with pytest.raises(ValueError):
        params(sigma=0.0)
    with pytest.raises(ValueError):
        params(delta0=-1.0)


def test_triggering_function():
    assert triggering_function(ctx(cons=4.0), 0.2) == pytest.approx(-0.8)
    assert triggering_function(ctx(e_x=1.0, e_y=2.0), 0.3) == pytest.approx(3.0)


def test_decay_closed_form():
    p = params(delta0=1.0, eta=10.0)
    assert decay_at(p, 0, 0.0) == 1.0
    assert decay_at(p, 0, 0.1) == pytest.approx(math.exp(-1.0), rel=1e-12)
    p2 = params(delta0=2.0, eta=10.0)
    assert decay_at(p2, 1, 0.2) == pytest.approx(2.0 * math.exp(-2.0), rel=1e-12)


class TestTriggerProbability:
    def test_zero_for_nonpositive_margin(self):
        p = params()
        for rho in (0.0, -0.5, -100.0):
            for delta in (1e-6, 1.0, 50.0):
                assert trigger_probability(p, 0, rho, delta) == 0.0

    def test_uniform_tail_value(self):
        p = params(kappa=1.075, c=1.0, a_floor=0.05)
        rho = math.log(2.0 * 1.075)  # makes the comparison level exactly one half
        assert trigger_probability(p, 0, rho, 1.0) == pytest.approx(0.5 / 0.95, rel=1e-12)

    def test_saturates_at_one(self):
        p = params()
        assert trigger_probability(p, 0, 1e9, 1.0) == 1.0

    def test_bounds_and_monotonicity_in_margin(self):
        p = params()
        grid = np.linspace(-5, 10, 301)
        vals = [trigger_probability(p, 0, float(r), 0.7) for r in grid]
        assert all(0.0 <= v <= 1.0 for v in vals)
        assert all(b >= a for a, b in zip(vals, vals[1:]))

    def test_nonincreasing_in_decay_for_positive_margin(self):
        p = params()
        deltas = np.linspace(1e-3, 20, 200)
        vals = [trigger_probability(p, 0, 2.5, float(d)) for d in deltas]
        assert all(b <= a for a, b in zip(vals, vals[1:]))

    def test_fully_decayed_scale_degenerates_to_sign_test(self):
        p = params()
        assert trigger_probability(p, 0, 1e-300, 0.0) == 1.0
        assert trigger_probability(p, 0, -1e-300, 0.0) == 0.0


class TestDecide:
    def test_continuous_always_fires(self):
        p = params()
        rng = np.random.default_rng(0)
        for c in random_contexts(rng, 50):
            assert decide(LawKind.CONTINUOUS, p, 0, c, 0.5)

    def test_stochastic_never_fires_on_nonpositive_margin(self):
        p = params(sigma=0.5)
        quiet = ctx(e_x=0.1, e_y=0.3, cons=10.0, decay=1e-7)  # margin negative
        assert triggering_function(quiet, 0.5) < 0
        for u in np.linspace(0.0, 1.0, 101)[:-1]:
            assert not decide(LawKind.STOCHASTIC, p, 0, quiet, float(u))

    def test_stochastic_matches_uniform_probability(self):
        p = params()
        rng = np.random.default_rng(1)
        for c in random_contexts(rng, 200):
            prob = trigger_probability(p, 0, triggering_function(c, 0.2), c.decay)
            for u in rng.random(20):
                assert decide(LawKind.STOCHASTIC, p, 0, c, float(u)) == (u < prob)

    def test_dynamic_equals_pinned_threshold_stochastic(self):
        # oracle in the multiplicative form: fire iff a_floor > kappa*exp(-c*rho/decay)
        p = params()
        rng = np.random.default_rng(2)
        agree = 0
        total = 0
        for c in random_contexts(rng, 10_000):
            rho = triggering_function(c, float(p.sigma[0]))
            z = float(p.c[0]) * rho / c.decay
            if z > 700.0:
                pinned = True
            elif z < -700.0:
                pinned = False
            else:
                pinned = p.a_floor > p.kappa * math.exp(-z)
            got = decide(LawKind.DYNAMIC, p, 0, c, 0.123)
            agree += got == pinned
            total += 1
        assert agree == total

    def test_static_threshold_comparison(self):
        p = params()
        scale = math.log(p.kappa) - math.log(p.a_floor)
        below = ctx(e_x=0.5 * scale, e_y=0.0, cons=100.0, decay=1.0)
        above = ctx(e_x=1.5 * scale, e_y=0.0, cons=100.0, decay=1.0)
        assert not decide(LawKind.STATIC, p, 0, below, 0.5)
        assert decide(LawKind.STATIC, p, 0, above, 0.5)
        # the disagreement term plays no role in the static comparison law
        same_but_no_cons = ctx(e_x=1.5 * scale, e_y=0.0, cons=0.0, decay=1.0)
        assert decide(LawKind.STATIC, p, 0, same_but_no_cons, 0.5)

    def test_decide_is_pure(self):
        p = params()
        rng = np.random.default_rng(3)
        for c in random_contexts(rng, 50):
            u = float(rng.random())
            for law in LawKind:
                assert decide(law, p, 0, c, u) == decide(law, p, 0, c, u)


def test_xi_mapping_support():
    p = params(a_floor=0.05)
    assert xi_from_uniform(p, 0.0) == 1.0
    assert xi_from_uniform(p, 0.999999) > 0.05
    for u in np.linspace(0, 1, 50)[:-1]:
        assert 0.05 < xi_from_uniform(p, float(u)) <= 1.0
