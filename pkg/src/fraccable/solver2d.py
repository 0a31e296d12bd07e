"""Compact scheme for the 2D time-fractional Cable equation on a rectangle.

Fields are arrays of shape (M1+1, M2+1) indexed [i, j] with x_i = i*hx and
y_j = j*hy, boundary ring included.  Per step the scheme needs the inverse of
Lx Ly, which factors into one family of x-tridiagonal solves followed by one
family of y-tridiagonal solves.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .compact1d import compact_L, delta_x2, solve_compact
from .errors import DomainError, StateError
from .solver1d import _check_orders, error_norms
from .weights import midpoint_weights_recurrence

__all__ = [
    "CableProblem2D",
    "MarchState2D",
    "Solution2D",
    "apply_Lx",
    "apply_Ly",
    "apply_dx2",
    "apply_dy2",
    "factored_compact_solve",
    "inner2d",
    "norm2d",
    "step_2d",
    "solve_2d",
]


def _zero_xyt(x, y, t):
    return 0.0 * (np.asarray(x, dtype=float) + np.asarray(y, dtype=float) + np.asarray(t, dtype=float))


@dataclass
class CableProblem2D:
    alpha1: float
    alpha2: float
    K1: float = 1.0
    K2: float = 1.0
    Lx: float = 1.0
    Ly: float = 1.0
    T: float = 1.0
    source: Callable = _zero_xyt
    boundary: Callable = _zero_xyt
    exact: Optional[Callable] = None

    def __post_init__(self):
        _check_orders(self.alpha1, self.alpha2)
        if not (self.T > 0 and self.Lx > 0 and self.Ly > 0):
            raise DomainError("T, Lx and Ly must be positive")


def _field(f) -> np.ndarray:
    f = np.asarray(f, dtype=float)
    if f.ndim != 2 or min(f.shape) < 3:
        raise ValueError(f"expected a 2D field with at least 3x3 nodes, got shape {f.shape}")
    return f


def apply_Lx(f) -> np.ndarray:
    return compact_L(_field(f))


def apply_Ly(f) -> np.ndarray:
    return compact_L(_field(f).T).T


def apply_dx2(f, hx: float) -> np.ndarray:
    return delta_x2(_field(f), hx)


def apply_dy2(f, hy: float) -> np.ndarray:
    return delta_x2(_field(f).T, hy).T


def factored_compact_solve(rhs, boundary) -> np.ndarray:
    """Solve Lx Ly u = rhs inside with u prescribed on the boundary ring.

    ``rhs`` has shape (M1-1, M2-1); ``boundary`` is a full (M1+1, M2+1) array
    whose ring supplies the Dirichlet data (its interior is ignored).

    With V = Ly u, the interior equations read Lx V = rhs.  V on the lines
    i = 0, M1 follows from the known ring, so each interior row j is an
    x-tridiagonal system for V; then each interior column i is a
    y-tridiagonal system Ly u = V with the known ends u_{i,0}, u_{i,M2}.
    """
    b = _field(boundary)
    rhs = np.asarray(rhs, dtype=float)
    if rhs.shape != (b.shape[0] - 2, b.shape[1] - 2):
        raise ValueError(f"rhs shape {rhs.shape} does not match boundary {b.shape}")
    # V on the two x-boundary lines, interior j only
    v_left = (b[0, :-2] + 10.0 * b[0, 1:-1] + b[0, 2:]) / 12.0
    v_right = (b[-1, :-2] + 10.0 * b[-1, 1:-1] + b[-1, 2:]) / 12.0
    V = solve_compact(rhs, v_left, v_right)          # (M1+1, M2-1)
    cols = solve_compact(V[1:-1].T, b[1:-1, 0], b[1:-1, -1])  # (M2+1, M1-1)
    u = b.copy()
    u[1:-1, :] = cols.T
    return u


def inner2d(u, v, hx: float, hy: float) -> float:
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise ValueError(f"grid mismatch: {u.shape} vs {v.shape}")
    return float(hx * hy * np.sum(u[1:-1, 1:-1] * v[1:-1, 1:-1]))


def norm2d(u, hx: float, hy: float) -> float:
    return float(np.sqrt(inner2d(u, u, hx, hy)))


class MarchState2D:
    """State of a 2D march.  See :class:`~fraccable.solver1d.MarchState1D`."""

    def __init__(self, problem: CableProblem2D, N: int, M1: int, M2: int, initial=None):
        if int(N) != N or N < 1:
            raise DomainError(f"N must be a positive integer, got {N!r}")
        for name, m in (("M1", M1), ("M2", M2)):
            if int(m) != m or m < 2:
                raise DomainError(f"{name} must be an integer >= 2, got {m!r}")
        self.problem = problem
        self.N, self.M1, self.M2 = int(N), int(M1), int(M2)
        self.tau = problem.T / self.N
        self.hx = problem.Lx / self.M1
        self.hy = problem.Ly / self.M2
        self.x = np.arange(self.M1 + 1) * self.hx
        self.y = np.arange(self.M2 + 1) * self.hy
        self.X, self.Y = np.meshgrid(self.x, self.y, indexing="ij")
        self.w1 = midpoint_weights_recurrence(1.0 - problem.alpha1, self.N)
        self.w2 = midpoint_weights_recurrence(1.0 - problem.alpha2, self.N)
        self.c1 = self.tau * problem.K1 * self.tau ** (-(1.0 - problem.alpha1))
        self.c2 = self.tau * problem.K2 * self.tau ** (-(1.0 - problem.alpha2))
        self.history = np.zeros((self.N + 1, self.M1 + 1, self.M2 + 1))
        if initial is None:
            ring = self.boundary_values(0.0)
            self.history[0] = ring
            self.history[0, 1:-1, 1:-1] = 0.0
        else:
            initial = np.asarray(initial, dtype=float)
            if initial.shape != self.X.shape:
                raise ValueError(f"initial level has shape {initial.shape}, expected {self.X.shape}")
            self.history[0] = initial
        self.level = 0

    def boundary_values(self, t: float) -> np.ndarray:
        g = np.asarray(self.problem.boundary(self.X, self.Y, t), dtype=float)
        return np.broadcast_to(g, self.X.shape).copy()

    @property
    def trajectory(self) -> np.ndarray:
        return self.history[: self.level + 1]


def assemble_rhs_2d(state: MarchState2D, k: int) -> np.ndarray:
    if not 0 <= k < state.N:
        raise StateError(f"step index {k} outside 0..{state.N - 1}")
    if k > state.level:
        raise StateError(f"history only reaches level {state.level}, asked for {k}")
    p = state.problem
    U = state.history
    H1 = np.tensordot(state.w1.weights[: k + 1], U[k::-1], axes=1)
    H2 = np.tensordot(state.w2.weights[: k + 1], U[k::-1], axes=1)
    f_half = np.asarray(p.source(state.X, state.Y, (k + 0.5) * state.tau), dtype=float)
    f_half = np.broadcast_to(f_half, state.X.shape)
    LxLy = lambda g: apply_Lx(apply_Ly(g))  # noqa: E731
    rhs = (LxLy(U[k])
           + state.c1 * (apply_Ly(apply_dx2(H1, state.hx)) + apply_Lx(apply_dy2(H1, state.hy)))
           - state.c2 * LxLy(H2)
           + state.tau * LxLy(f_half))
    return rhs[1:-1, 1:-1]


def step_2d(state: MarchState2D) -> np.ndarray:
    k = state.level
    if k >= state.N:
        raise StateError("march already reached the final time")
    rhs = assemble_rhs_2d(state, k)
    ring = state.boundary_values((k + 1) * state.tau)
    state.history[k + 1] = factored_compact_solve(rhs, ring)
    state.level = k + 1
    return state.history[k + 1]


@dataclass
class Solution2D:
    x: np.ndarray
    y: np.ndarray
    t: np.ndarray
    u: np.ndarray
    exact: Optional[np.ndarray] = None
    errors: Optional[dict] = None

    @property
    def tau(self) -> float:
        return float(self.t[1] - self.t[0])

    def error(self, norm: str = "max-all") -> float:
        if self.errors is None:
            raise ValueError("no exact solution was supplied")
        return self.errors[norm]


def solve_2d(problem: CableProblem2D, N: int, M1: int, M2: Optional[int] = None,
             initial=None) -> Solution2D:
    """March to t = T; report error norms when ``problem.exact`` is given."""
    state = MarchState2D(problem, N, M1, M1 if M2 is None else M2, initial=initial)
    for _ in range(state.N):
        step_2d(state)
    t = np.arange(state.N + 1) * state.tau
    sol = Solution2D(state.x, state.y, t, state.history)
    if problem.exact is not None:
        ref = np.asarray(problem.exact(state.X[None], state.Y[None], t[:, None, None]), dtype=float)
        sol.exact = np.broadcast_to(ref, sol.u.shape).copy()
        sol.errors = error_norms(sol.u, sol.exact, state.hx * state.hy)
    return sol
