"""Riemann-Liouville derivative of sampled histories.

``midpoint_rl_apply`` is the second-order shifted formula: the weighted sum
over u^0..u^k approximates the derivative at the half step t_{k+1/2}.
``gl_first_order_apply`` is the classical Grunwald-Letnikov sum, first order
at t_k, kept as an independent check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .weights import WeightSequence, binomial_weights, midpoint_weights_recurrence

__all__ = [
    "TimeHistory",
    "history_convolution",
    "midpoint_rl_apply",
    "gl_first_order_apply",
    "exact_rl_monomial",
    "derivative_study",
    "aligned_steps",
]


@dataclass(frozen=True)
class TimeHistory:
    """Samples u^j = u(j * step), j = 0..k.  Times are derived, never stored."""

    step: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not self.step > 0:
            raise DomainError(f"step must be positive, got {self.step!r}")
        v = np.array(self.values, dtype=float)
        if v.shape[0] == 0:
            raise DomainError("history must hold at least one sample")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return self.values.shape[0]

    def time(self, j) -> float:
        return j * self.step

    @classmethod
    def sample(cls, func, step: float, count: int) -> "TimeHistory":
        """Sample ``func`` at t_0..t_{count-1}."""
        t = np.arange(count) * step
        return cls(step, func(t))


def _weights_array(w) -> np.ndarray:
    return w.weights if isinstance(w, WeightSequence) else np.asarray(w, dtype=float)


def history_convolution(w, h: TimeHistory, k: int):
    """sum_{l=0}^{k} w_l u^{k-l}.

    ``h.values`` may carry trailing axes (a spatial field per time level);
    the sum is taken along the leading one.
    """
    w = _weights_array(w)
    if not 0 <= k < len(h):
        raise IndexError(f"level {k} outside history of length {len(h)}")
    if w.shape[0] < k + 1:
        raise ValueError(f"need {k + 1} weights, have {w.shape[0]}")
    return np.tensordot(w[: k + 1], h.values[k::-1], axes=1)


def midpoint_rl_apply(beta: float, h: TimeHistory, k: int, weights=None):
    """Shifted approximation of the order-``beta`` derivative at (k + 1/2) * step.

    Pass precomputed ``weights`` when applying repeatedly; otherwise a table of
    length k+1 is generated for this call.
    """
    if weights is None:
        weights = midpoint_weights_recurrence(beta, k)
    return h.step ** (-beta) * history_convolution(weights, h, k)


def gl_first_order_apply(beta: float, h: TimeHistory, k: int, weights=None):
    """First-order Grunwald-Letnikov approximation at k * step."""
    if weights is None:
        weights = binomial_weights(beta, k)
    return h.step ** (-beta) * history_convolution(weights, h, k)


def exact_rl_monomial(p: float, beta: float, t):
    """RL derivative (lower limit 0) of t**p: Gamma(p+1)/Gamma(p+1-beta) t**(p-beta)."""
    if p <= 0:
        raise DomainError(f"exponent must be positive, got {p!r}")
    if not 0 < beta < p + 1:
        raise DomainError(f"order must lie in (0, p+1), got {beta!r}")
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("time must be non-negative")
    out = math.gamma(p + 1) / math.gamma(p + 1 - beta) * t ** (p - beta)
    return out[()] if out.ndim == 0 else out


def aligned_steps(t_eval: float = 0.5, levels=(10, 20, 40, 80, 160)) -> list[float]:
    """Steps tau = t_eval / (k + 1/2) placing t_eval exactly on a half-step."""
    return [t_eval / (k + 0.5) for k in levels]


def derivative_study(beta: float, taus, exponent: float | None = None,
                     t_eval: float = 0.5, aligned: bool = True):
    """Approximate the RL derivative of u = t**exponent near ``t_eval``.

    With ``aligned`` each tau must satisfy t_eval = (k + 1/2) tau for an integer
    k (up to rounding); the error is measured at that half step.  Otherwise
    k = round(t_eval / tau) and the error is measured at the half step
    (k + 1/2) tau that the formula actually targets.

    Returns a list of dicts with keys tau, k, t_target, approx, exact,
    abs_error, observed_order (None on the first row).
    """
    if exponent is None:
        exponent = 2.0 + beta
    rows = []
    for tau in taus:
        tau = float(tau)
        if aligned:
            k = int(round(t_eval / tau - 0.5))
            if abs((k + 0.5) * tau - t_eval) > 1e-12 * max(1.0, t_eval):
                raise DomainError(f"tau={tau!r} does not align {t_eval} with a half step")
        else:
            k = int(round(t_eval / tau))
        t_target = (k + 0.5) * tau
        hist = TimeHistory.sample(lambda t: t ** exponent, tau, k + 1)
        approx = float(midpoint_rl_apply(beta, hist, k))
        exact = float(exact_rl_monomial(exponent, beta, t_target))
        rows.append(dict(tau=tau, k=k, t_target=t_target, approx=approx,
                         exact=exact, abs_error=abs(approx - exact),
                         observed_order=None))
    for prev, cur in zip(rows, rows[1:]):
        if prev["abs_error"] > 0 and cur["abs_error"] > 0:
            cur["observed_order"] = (math.log(prev["abs_error"] / cur["abs_error"])
                                     / math.log(prev["tau"] / cur["tau"]))
    return rows
