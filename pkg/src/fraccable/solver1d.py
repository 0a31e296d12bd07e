"""Compact scheme for the 1D time-fractional Cable equation.

    u_t = K1 D^{1-a1} u_xx - K2 D^{1-a2} u + f,   0 < x < L, 0 < t <= T,
    u(x, 0) = 0,  u(0, t) = phi1(t),  u(L, t) = phi2(t).

Each step solves

    L(u^{k+1} - u^k) = tau K1 d^{1-a1} delta_x^2 u^k - tau K2 d^{1-a2} L u^k
                       + tau L f^{k+1/2}

where d^{b} is the shifted weighted-history operator.  The march starts at
k = 0; the history sums vanish there because u^0 is zero inside.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .compact1d import Grid1D, compact_L, delta_x2, solve_compact
from .errors import DomainError, StateError
from .weights import midpoint_weights_recurrence

__all__ = [
    "CableProblem1D",
    "MarchState1D",
    "Solution1D",
    "assemble_rhs_1d",
    "step_1d",
    "solve_1d",
    "error_norms",
    "NORMS",
]

NORMS = ("max-final", "max-all", "l2-final")


def _zero_t(t):
    return 0.0 * np.asarray(t, dtype=float)


def _zero_xt(x, t):
    return np.zeros_like(np.asarray(x, dtype=float)) + 0.0 * np.asarray(t, dtype=float)


def _check_orders(alpha1, alpha2):
    for name, a in (("alpha1", alpha1), ("alpha2", alpha2)):
        if not 0.0 < a < 1.0:
            raise DomainError(f"{name} must lie in (0, 1), got {a!r}")


@dataclass
class CableProblem1D:
    """Problem data.  The initial condition is always zero."""

    alpha1: float
    alpha2: float
    K1: float = 1.0
    K2: float = 1.0
    length: float = 1.0
    T: float = 1.0
    source: Callable = _zero_xt
    left: Callable = _zero_t
    right: Callable = _zero_t
    exact: Optional[Callable] = None

    def __post_init__(self):
        _check_orders(self.alpha1, self.alpha2)
        if not self.T > 0:
            raise DomainError(f"T must be positive, got {self.T!r}")
        if not self.length > 0:
            raise DomainError(f"length must be positive, got {self.length!r}")


def error_norms(u: np.ndarray, ref: np.ndarray, cell_volume: float) -> dict:
    """Error measures between trajectories of shape (N+1, *spatial).

    max-final: max |e| over all nodes at the last level
    max-all:   max |e| over all nodes and all levels
    l2-final:  discrete L2 norm over interior nodes at the last level
    """
    e = np.abs(u - ref)
    interior = (slice(1, -1),) * (e.ndim - 1)
    last = e[-1][interior]
    return {
        "max-final": float(e[-1].max()),
        "max-all": float(e.max()),
        "l2-final": float(np.sqrt(cell_volume * np.sum(last * last))),
    }


class MarchState1D:
    """Mutable state of one time march: grid, weights and stored history.

    ``initial`` overrides the zero initial level; it exists for perturbation
    (stability) experiments and should otherwise be left alone.
    """

    def __init__(self, problem: CableProblem1D, N: int, M: int, initial=None):
        if int(N) != N or N < 1:
            raise DomainError(f"N must be a positive integer, got {N!r}")
        self.problem = problem
        self.grid = Grid1D(problem.length, int(M))
        self.N = int(N)
        self.tau = problem.T / self.N
        self.x = self.grid.nodes
        # derivative orders 1 - alpha_i
        self.w1 = midpoint_weights_recurrence(1.0 - problem.alpha1, self.N)
        self.w2 = midpoint_weights_recurrence(1.0 - problem.alpha2, self.N)
        self.c1 = self.tau * problem.K1 * self.tau ** (-(1.0 - problem.alpha1))
        self.c2 = self.tau * problem.K2 * self.tau ** (-(1.0 - problem.alpha2))
        self.history = np.zeros((self.N + 1, self.grid.cells + 1))
        if initial is None:
            self.history[0, 0] = problem.left(0.0)
            self.history[0, -1] = problem.right(0.0)
        else:
            initial = np.asarray(initial, dtype=float)
            if initial.shape != self.x.shape:
                raise ValueError(f"initial level has shape {initial.shape}, expected {self.x.shape}")
            self.history[0] = initial
        self.level = 0

    def time(self, k) -> float:
        return k * self.tau

    @property
    def trajectory(self) -> np.ndarray:
        return self.history[: self.level + 1]


def assemble_rhs_1d(state: MarchState1D, k: int):
    """Interior right-hand side and boundary pair for level k+1."""
    if not 0 <= k < state.N:
        raise StateError(f"step index {k} outside 0..{state.N - 1}")
    if k > state.level:
        raise StateError(f"history only reaches level {state.level}, asked for {k}")
    p = state.problem
    U = state.history
    h = state.grid.h
    H1 = state.w1.weights[: k + 1] @ U[k::-1]
    H2 = state.w2.weights[: k + 1] @ U[k::-1]
    f_half = np.asarray(p.source(state.x, (k + 0.5) * state.tau), dtype=float)
    f_half = np.broadcast_to(f_half, state.x.shape)
    rhs = (compact_L(U[k])
           + state.c1 * delta_x2(H1, h)
           - state.c2 * compact_L(H2)
           + state.tau * compact_L(f_half))
    t_next = (k + 1) * state.tau
    return rhs[1:-1], (float(p.left(t_next)), float(p.right(t_next)))


def step_1d(state: MarchState1D) -> np.ndarray:
    """Advance one level and return the new field."""
    k = state.level
    if k >= state.N:
        raise StateError("march already reached the final time")
    rhs, (left, right) = assemble_rhs_1d(state, k)
    state.history[k + 1] = solve_compact(rhs, left, right)
    state.level = k + 1
    return state.history[k + 1]


@dataclass
class Solution1D:
    x: np.ndarray
    t: np.ndarray
    u: np.ndarray
    exact: Optional[np.ndarray] = None
    errors: Optional[dict] = None

    @property
    def tau(self) -> float:
        return float(self.t[1] - self.t[0])

    @property
    def h(self) -> float:
        return float(self.x[1] - self.x[0])

    def error(self, norm: str = "max-all") -> float:
        if self.errors is None:
            raise ValueError("no exact solution was supplied")
        return self.errors[norm]


def solve_1d(problem: CableProblem1D, N: int, M: int, initial=None) -> Solution1D:
    """March to t = T; report error norms when ``problem.exact`` is given."""
    state = MarchState1D(problem, N, M, initial=initial)
    for _ in range(state.N):
        step_1d(state)
    t = np.arange(state.N + 1) * state.tau
    sol = Solution1D(state.x, t, state.history)
    if problem.exact is not None:
        ref = np.asarray(problem.exact(state.x[None, :], t[:, None]), dtype=float)
        sol.exact = np.broadcast_to(ref, sol.u.shape).copy()
        sol.errors = error_norms(sol.u, sol.exact, state.grid.h)
    return sol
