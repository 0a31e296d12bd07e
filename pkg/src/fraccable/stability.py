"""Perturbation experiments: how much can an initial disturbance grow?

For the homogeneous problem (f = 0, zero boundaries) started from a random
interior field rho, the energy argument bounds every later level by
sqrt(6)/2 * ||rho|| in 1D and sqrt(3) * ||rho|| in 2D.
"""

from __future__ import annotations

import math

import numpy as np

from .compact1d import Grid1D
from .solver1d import CableProblem1D, solve_1d
from .solver2d import CableProblem2D, solve_2d

__all__ = ["BOUND_1D", "BOUND_2D", "perturbation_growth"]

BOUND_1D = math.sqrt(6.0) / 2.0
BOUND_2D = math.sqrt(3.0)


def perturbation_growth(alpha1: float, alpha2: float, N: int, M: int, dim: int = 1,
                        trials: int = 20, seed=0, K1: float = math.pi ** -8,
                        K2: float = 1.0) -> np.ndarray:
    """max_n ||eps^n|| / ||rho|| for ``trials`` random perturbations."""
    rng = np.random.default_rng(seed)
    ratios = np.empty(trials)
    if dim == 1:
        problem = CableProblem1D(alpha1, alpha2, K1=K1, K2=K2)
        h = Grid1D(problem.length, M).h
        for i in range(trials):
            rho = np.zeros(M + 1)
            rho[1:-1] = rng.standard_normal(M - 1)
            u = solve_1d(problem, N, M, initial=rho).u
            norms = np.sqrt(h * np.sum(u[:, 1:-1] ** 2, axis=1))
            ratios[i] = norms.max() / norms[0]
    elif dim == 2:
        problem = CableProblem2D(alpha1, alpha2, K1=K1, K2=K2)
        for i in range(trials):
            rho = np.zeros((M + 1, M + 1))
            rho[1:-1, 1:-1] = rng.standard_normal((M - 1, M - 1))
            u = solve_2d(problem, N, M, M, initial=rho).u
            norms = np.sqrt(np.sum(u[:, 1:-1, 1:-1] ** 2, axis=(1, 2))) / M
            ratios[i] = norms.max() / norms[0]
    else:
        raise ValueError(f"dim must be 1 or 2, got {dim!r}")
    return ratios
