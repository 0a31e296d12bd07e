"""Quadrature weights of the shifted (midpoint) Riemann-Liouville formula.

The weights are the Taylor coefficients of

    G(z) = ((3b+1)/(2b) - (2b+1)/b * z + (b+1)/(2b) * z**2) ** b

where ``b`` is the order of the derivative being approximated.  Everything in
this module is written in terms of that order.  The Cable solvers need the
derivative of order ``1 - alpha``; they pass ``b = 1 - alpha`` themselves.

Two independent constructions are provided: a three-term recurrence (cheap,
used in production) and the Cauchy product of two binomial series (quadratic
cost, kept as a cross-check).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

__all__ = [
    "WeightSequence",
    "binomial_weights",
    "midpoint_weights_direct",
    "midpoint_weights_recurrence",
    "midpoint_weights",
    "generating_function_eval",
    "history_symbol",
    "symbol_min_scan",
]

# above this length the convolution switches to compensated summation
_FSUM_THRESHOLD = 1024


@dataclass(frozen=True)
class WeightSequence:
    """Immutable table of weights w_0..w_n for derivative order ``order``."""

    order: float
    weights: np.ndarray = field(repr=False)
    method: str = "recurrence"

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    def __len__(self) -> int:
        return self.weights.shape[0]

    def __getitem__(self, idx):
        return self.weights[idx]

    def __array__(self, dtype=None, copy=None):
        return self.weights if dtype is None else self.weights.astype(dtype)

    @property
    def n(self) -> int:
        return len(self) - 1

    def partial_sums(self) -> np.ndarray:
        return np.cumsum(self.weights)


def _check_order(beta: float) -> float:
    beta = float(beta)
    if not (0.0 < beta <= 1.0):
        raise DomainError(f"order must lie in (0, 1], got {beta!r}")
    return beta


def _check_count(n: int) -> int:
    if int(n) != n or n < 0:
        raise DomainError(f"count must be a non-negative integer, got {n!r}")
    return int(n)


def binomial_weights(beta: float, n: int) -> np.ndarray:
    """Coefficients g_m = (-1)^m C(beta, m), m = 0..n, of (1 - z)^beta.

    These are the classical Grunwald-Letnikov weights.
    """
    beta = float(beta)
    if beta <= 0:
        raise DomainError(f"order must be positive, got {beta!r}")
    n = _check_count(n)
    g = np.empty(n + 1)
    g[0] = 1.0
    for m in range(1, n + 1):
        g[m] = (1.0 - (beta + 1.0) / m) * g[m - 1]
    return g


def midpoint_weights_direct(beta: float, n: int) -> WeightSequence:
    """Weights via the convolution of two binomial series.

    G(z) factors as c * (1 - z)^b * (1 - r z)^b with c = ((3b+1)/(2b))^b and
    r = (b+1)/(3b+1), so w_l = c * sum_m r^m g_m g_{l-m}.  O(n^2).
    """
    beta = _check_order(beta)
    n = _check_count(n)
    g = binomial_weights(beta, n)
    r = (beta + 1.0) / (3.0 * beta + 1.0)
    c = ((3.0 * beta + 1.0) / (2.0 * beta)) ** beta
    rg = r ** np.arange(n + 1) * g
    w = np.empty(n + 1)
    if n <= _FSUM_THRESHOLD:
        for ell in range(n + 1):
            w[ell] = np.dot(rg[: ell + 1], g[ell::-1])
    else:
        for ell in range(n + 1):
            w[ell] = math.fsum(rg[: ell + 1] * g[ell::-1])
    return WeightSequence(beta, c * w, method="direct")


def midpoint_weights_recurrence(beta: float, n: int) -> WeightSequence:
    """Weights via the three-term recurrence, O(n).

    w_0 = ((3b+1)/(2b))^b
    w_1 = -2b(2b+1)/(3b+1) * w_0
    w_l = [2(l-1-b)(2b+1) w_{l-1} + (1+b)(2+2b-l) w_{l-2}] / ((3b+1) l)
    """
    beta = _check_order(beta)
    n = _check_count(n)
    w = np.zeros(n + 1)
    w[0] = ((3.0 * beta + 1.0) / (2.0 * beta)) ** beta
    if n >= 1:
        w[1] = -2.0 * beta * (2.0 * beta + 1.0) / (3.0 * beta + 1.0) * w[0]
    a = 2.0 * (2.0 * beta + 1.0)
    d = 3.0 * beta + 1.0
    for ell in range(2, n + 1):
        w[ell] = (a * (ell - 1 - beta) * w[ell - 1]
                  + (1.0 + beta) * (2.0 + 2.0 * beta - ell) * w[ell - 2]) / (d * ell)
    return WeightSequence(beta, w, method="recurrence")


midpoint_weights = midpoint_weights_recurrence


def generating_function_eval(beta: float, z):
    """Evaluate G(z) on the principal branch."""
    beta = _check_order(beta)
    z = np.asarray(z, dtype=complex)
    q = ((3 * beta + 1) / (2 * beta)
         - (2 * beta + 1) / beta * z
         + (beta + 1) / (2 * beta) * z * z)
    out = np.power(q, beta)
    return out[()] if out.ndim == 0 else out


def history_symbol(beta: float, x, n_trunc: int = 4096) -> np.ndarray:
    """Truncated symbol sum_k w_k [cos(kx) + cos((k+1)x)].

    This is the generating function of the symmetric Toeplitz matrix behind
    the discrete energy identity sum_k (delta u^k, u^{k+1} + u^k); it is
    nonnegative exactly when that matrix is positive semi-definite.
    """
    w = midpoint_weights_recurrence(beta, n_trunc).weights
    x = np.atleast_1d(np.asarray(x, dtype=float))
    k = np.arange(n_trunc + 1)
    phase = np.outer(x, k)
    return (np.cos(phase) + np.cos(phase + x[:, None])) @ w


def symbol_min_scan(beta: float, x_points: int = 256, n_trunc: int = 4096) -> float:
    """Minimum of :func:`history_symbol` on a uniform grid of [0, pi]."""
    x = np.linspace(0.0, np.pi, int(x_points))
    return float(history_symbol(beta, x, n_trunc).min())
