"""Directed communication graphs and their spectral certificates.

The estimate-sharing dynamics couple all n*n stacked estimates through the
matrix ``kron(L, I) + diag(stacked adjacency)``; for strongly connected
digraphs that matrix has spectrum in the open right half-plane, so a
positive definite pair (P, Q) solving the continuous Lyapunov equation
exists and certifies exponential contraction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import NotStronglyConnected, SolverFailure

# Relative residual allowed on the Lyapunov solve, w.r.t. the norm of Q.
LYAPUNOV_RTOL = 1e-8


@dataclass(frozen=True)
class DirectedGraph:
    """Weighted digraph over n >= 2 players.

    ``weights[i, j] > 0`` means there is a link from player j to player i,
    i.e. i hears j's broadcasts. Self-loops are disallowed.
    """

    weights: np.ndarray

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError("weights must be a square matrix")
        if w.shape[0] < 2:
            raise ValueError("at least two players are required")
        if not np.isfinite(w).all():
            raise ValueError("weights must be finite")
        if (w < 0).any():
            raise ValueError("weights must be nonnegative")
        if np.diagonal(w).any():
            raise ValueError("diagonal weights (self-loops) must be zero")
        w.flags.writeable = False
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    @property
    def in_degrees(self) -> np.ndarray:
        return self.weights.sum(axis=1)


@dataclass(frozen=True)
class LyapunovPair:
    """Positive definite (P, Q) with ``M.T @ P + P @ M == Q`` for the coupling matrix M.

    ``residual`` is the operator norm of the defect ``M.T @ P + P @ M - Q``.
    """

    p: np.ndarray
    q: np.ndarray
    residual: float


def laplacian(g: DirectedGraph) -> np.ndarray:
    """In-degree Laplacian ``diag(in_degrees) - weights``; rows sum to zero."""
    return np.diag(g.in_degrees) - g.weights


def adjacency_diagonal(g: DirectedGraph) -> np.ndarray:
    """n^2 x n^2 diagonal matrix of the adjacency entries stacked row by row."""
    return np.diag(g.weights.ravel())


def coupling_matrix(g: DirectedGraph) -> np.ndarray:
    """Matrix driving the stacked estimate errors: ``kron(L, I_n) + adjacency_diagonal``.

    Nonsingular with spectrum in the open right half-plane exactly when the
    graph is strongly connected.
    """
    return np.kron(laplacian(g), np.eye(g.n)) + adjacency_diagonal(g)


def _reaches_all(links: np.ndarray) -> bool:
    # links[i, j] True means j -> i; breadth-first expansion from node 0
    n = links.shape[0]
    reached = np.zeros(n, dtype=bool)
    reached[0] = True
    frontier = reached.copy()
    while frontier.any():
        nxt = links[:, frontier].any(axis=1) & ~reached
        reached |= nxt
        frontier = nxt
    return bool(reached.all())


def is_strongly_connected(g: DirectedGraph) -> bool:
    """True iff every node reaches every other along directed links."""
    links = g.weights > 0
    return _reaches_all(links) and _reaches_all(links.T)


def solve_lyapunov_pd(m: np.ndarray, q: np.ndarray) -> LyapunovPair:
    """Solve ``m.T @ P + P @ m = q`` for symmetric positive definite P.

    Requires q symmetric positive definite and m with spectrum in the open
    right half-plane; raises SolverFailure if the solve does not certify.
    """
    q = np.asarray(q, dtype=float)
    if q.shape != m.shape:
        raise ValueError("q must match the coupling matrix shape")
    if not np.allclose(q, q.T, rtol=0, atol=1e-12 * max(1.0, abs(q).max())):
        raise ValueError("q must be symmetric")
    if np.linalg.eigvalsh(q).min() <= 0:
        raise ValueError("q must be positive definite")

    p = scipy.linalg.solve_continuous_lyapunov(m.T, q)
    p = 0.5 * (p + p.T)
    residual = np.linalg.norm(m.T @ p + p @ m - q, 2)
    if residual > LYAPUNOV_RTOL * np.linalg.norm(q, 2):
        raise SolverFailure(f"Lyapunov residual {residual:.3e} above tolerance")
    if np.linalg.eigvalsh(p).min() <= 0:
        raise SolverFailure("Lyapunov solution is not positive definite")
    return LyapunovPair(p=p, q=q, residual=float(residual))


def lyapunov_pair(g: DirectedGraph, q: np.ndarray | None = None) -> LyapunovPair:
    """Lyapunov certificate for the coupling matrix of a strongly connected graph.

    ``q`` defaults to the identity, which makes its minimum eigenvalue 1 and
    keeps the rate constants simple.
    """
    if not is_strongly_connected(g):
        raise NotStronglyConnected("graph must be strongly connected")
    m = coupling_matrix(g)
    if q is None:
        q = np.eye(g.n * g.n)
    return solve_lyapunov_pd(m, q)
