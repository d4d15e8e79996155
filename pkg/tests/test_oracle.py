import time

import numpy as np
import pytest

from neseek import ActionInterval, QuadraticGame, solve_ne, verify_ne
from neseek.errors import NoConvergence

from test_games import decoupled_quadratic, published_game


def coupled_two_player():
    # pseudo-gradient matrix [[2, 1], [1, 2]] with offset (-4, -5): equilibrium (1, 2)
    return QuadraticGame(
        diag_a=[2.0, 2.0],
        cross=[[0.0, 1.0], [1.0, 0.0]],
        offset=[-4.0, -5.0],
        intervals=(ActionInterval(-10.0, 10.0), ActionInterval(-10.0, 10.0)),
    )


def test_spectrum_equilibrium_matches_published(published_x_star):
    t0 = time.perf_counter()
    sol = solve_ne(published_game())
    elapsed = time.perf_counter() - t0
    assert np.abs(sol.x_star - published_x_star).max() < 1e-2
    assert sol.residual <= 1e-8
    assert elapsed < 1.0


def test_decoupled_closed_form():
    game = decoupled_quadratic(diag=(2.0, 4.0), offset=(-4.0, -12.0), box=(0.0, 2.5))
    sol = solve_ne(game)
    # unconstrained minimizers are (2, 3); the second clamps at 2.5
    assert np.allclose(sol.x_star, [2.0, 2.5], atol=1e-7)


def test_coupled_two_player_hand_solve():
    sol = solve_ne(coupled_two_player())
    assert np.allclose(sol.x_star, [1.0, 2.0], atol=1e-7)


def test_verify_at_solution():
    game = published_game()
    sol = solve_ne(game, tol=1e-9)
    assert verify_ne(game, sol.x_star, step=0.05) <= 1e-8


def test_verify_at_published_equilibrium(published_x_star):
    assert verify_ne(published_game(), published_x_star, step=0.05) < 0.05


def test_verify_interior_minimizer_is_zero():
    game = decoupled_quadratic(diag=(2.0, 4.0), offset=(-4.0, -12.0))
    assert verify_ne(game, np.array([2.0, 3.0]), step=0.1) <= 1e-12


def test_step_invariance():
    # the fixed point does not depend on the step; slack covers the
    # residual-to-distance factor of the slowest contraction
    game = published_game()
    sols = [solve_ne(game, step=s, tol=1e-12).x_star for s in (0.01, 0.05, 0.1)]
    for a in sols:
        for b in sols:
            assert np.abs(a - b).max() <= 1e-9


def test_residual_not_worse_than_start():
    game = published_game()
    lo, hi = game.bounds
    start = 0.5 * (lo + hi)
    sol = solve_ne(game)
    step = 0.05
    assert verify_ne(game, sol.x_star, step) <= verify_ne(game, start, step)


def test_no_convergence_reports_residual():
    with pytest.raises(NoConvergence) as err:
        solve_ne(published_game(), tol=1e-15, max_iter=3)
    assert err.value.residual > 0
