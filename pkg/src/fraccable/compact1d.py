"""One-dimensional compact finite-difference toolkit.

Grid functions are plain float arrays of length M+1 including both boundary
nodes.  Operators read the boundary values and write interior entries only;
the two compact operators act as the identity on the boundary, the second
difference leaves zeros there.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError

__all__ = [
    "Grid1D",
    "delta_x2",
    "compact_L",
    "solve_tridiagonal",
    "solve_compact",
    "compact_matrix",
    "inner",
    "norm",
]


@dataclass(frozen=True)
class Grid1D:
    length: float
    cells: int

    def __post_init__(self):
        if not self.length > 0:
            raise DomainError(f"length must be positive, got {self.length!r}")
        if int(self.cells) != self.cells or self.cells < 2:
            raise DomainError(f"need at least 2 cells, got {self.cells!r}")

    @property
    def h(self) -> float:
        return self.length / self.cells

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(self.cells + 1) * self.h

    def zeros(self) -> np.ndarray:
        return np.zeros(self.cells + 1)


def _check_field(f, axis=0) -> np.ndarray:
    f = np.asarray(f, dtype=float)
    if f.shape[axis] < 3:
        raise DomainError("grid function needs at least 3 nodes (M >= 2)")
    return f


def delta_x2(f, h: float) -> np.ndarray:
    """Second central difference on interior nodes; boundary entries are 0.

    Works along the leading axis, so a (M+1, ...) stack is handled at once.
    """
    f = _check_field(f)
    out = np.zeros_like(f)
    out[1:-1] = (f[2:] - 2.0 * f[1:-1] + f[:-2]) / (h * h)
    return out


def compact_L(f) -> np.ndarray:
    """(f_{j-1} + 10 f_j + f_{j+1}) / 12 on interior nodes, identity on the ends."""
    f = _check_field(f)
    out = f.copy()
    out[1:-1] = (f[2:] + 10.0 * f[1:-1] + f[:-2]) / 12.0
    return out


def solve_tridiagonal(lower, diag, upper, rhs) -> np.ndarray:
    """Thomas algorithm, no pivoting.

    ``lower``/``upper`` have length n-1, ``diag`` length n.  ``rhs`` has shape
    (n, ...); trailing axes are independent systems solved together.  Only safe
    for diagonally dominant matrices.
    """
    a = np.asarray(lower, dtype=float)
    b = np.asarray(diag, dtype=float)
    c = np.asarray(upper, dtype=float)
    d = np.array(rhs, dtype=float)
    n = b.shape[0]
    if d.shape[0] != n:
        raise ValueError(f"rhs has {d.shape[0]} rows, matrix has {n}")
    cp = np.empty(max(n - 1, 0))
    denom = b[0]
    if n > 1:
        cp[0] = c[0] / denom
    d[0] = d[0] / denom
    for i in range(1, n):
        denom = b[i] - a[i - 1] * cp[i - 1]
        if i < n - 1:
            cp[i] = c[i] / denom
        d[i] = (d[i] - a[i - 1] * d[i - 1]) / denom
    for i in range(n - 2, -1, -1):
        d[i] -= cp[i] * d[i + 1]
    return d


@lru_cache(maxsize=64)
def _compact_factor(n: int):
    # forward-sweep multipliers of tridiag(1, 10, 1)/12, size n
    cp = np.empty(n)
    inv = np.empty(n)
    off = 1.0 / 12.0
    dia = 10.0 / 12.0
    inv[0] = 1.0 / dia
    cp[0] = off * inv[0]
    for i in range(1, n):
        inv[i] = 1.0 / (dia - off * cp[i - 1])
        cp[i] = off * inv[i]
    cp.setflags(write=False)
    inv.setflags(write=False)
    return cp, inv


def _solve_compact_interior(r: np.ndarray) -> np.ndarray:
    # solves tridiag(1,10,1)/12 x = r along axis 0, r already boundary-corrected
    n = r.shape[0]
    cp, inv = _compact_factor(n)
    off = 1.0 / 12.0
    x = np.array(r, dtype=float)
    x[0] *= inv[0]
    for i in range(1, n):
        x[i] = (x[i] - off * x[i - 1]) * inv[i]
    for i in range(n - 2, -1, -1):
        x[i] -= cp[i] * x[i + 1]
    return x


def solve_compact(rhs, left, right) -> np.ndarray:
    """Return u with u_0 = left, u_M = right and (L u)_j = rhs_j inside.

    ``rhs`` holds the M-1 interior values (leading axis).  ``left``/``right``
    broadcast against the trailing axes, which allows batched solves.
    """
    rhs = np.asarray(rhs, dtype=float)
    n = rhs.shape[0]
    if n < 1:
        raise DomainError("need at least one interior node")
    r = rhs.copy()
    r[0] = r[0] - np.asarray(left, dtype=float) / 12.0
    r[-1] = r[-1] - np.asarray(right, dtype=float) / 12.0
    u = np.empty((n + 2,) + rhs.shape[1:])
    u[0] = left
    u[-1] = right
    u[1:-1] = _solve_compact_interior(r)
    return u


def compact_matrix(m: int) -> np.ndarray:
    """Dense (M-1)x(M-1) matrix of L restricted to interior nodes."""
    n = m - 1
    return (np.diag(np.full(n, 10.0 / 12.0))
            + np.diag(np.full(n - 1, 1.0 / 12.0), 1)
            + np.diag(np.full(n - 1, 1.0 / 12.0), -1))


def inner(u, v, h: float) -> float:
    """Discrete inner product h * sum_{j=1}^{M-1} u_j v_j."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise ValueError(f"grid mismatch: {u.shape} vs {v.shape}")
    return float(h * np.dot(u[1:-1], v[1:-1]))


def norm(u, h: float) -> float:
    return float(np.sqrt(inner(u, u, h)))
