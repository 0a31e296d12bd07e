"""Built-in manufactured problems and JSON problem configuration."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import DomainError
from .expression import parse_expression
from .solver1d import NORMS, CableProblem1D
from .solver2d import CableProblem2D

__all__ = [
    "example1_exponent",
    "example2",
    "example3",
    "RunConfig",
    "load_config",
    "config_from_dict",
]

PRESETS = ("example1", "example2", "example3")


def example1_exponent(beta: float) -> float:
    """Exponent p of the test function t**p behind the published derivative table.

    The table's numbers are reproduced by p = 3 - beta with beta the derivative
    order (for beta = 0.5 this coincides with t**(2 + beta)).
    """
    return 3.0 - beta


def example2(alpha1: float, alpha2: float) -> CableProblem1D:
    """u = t^2 sin(pi x) on (0,1)x(0,1] with K1 = pi^-8, K2 = 1, zero boundaries."""
    g1 = math.gamma(2.0 + alpha1)
    g2 = math.gamma(2.0 + alpha2)
    pi6 = math.pi ** 6

    def source(x, t):
        return 2.0 * (t + t ** (1 + alpha1) / (pi6 * g1) + t ** (1 + alpha2) / g2) * np.sin(np.pi * x)

    def exact(x, t):
        return t * t * np.sin(np.pi * x)

    return CableProblem1D(alpha1, alpha2, K1=math.pi ** -8, K2=1.0, length=1.0, T=1.0,
                          source=source, exact=exact)


def example3(alpha1: float, alpha2: float) -> CableProblem2D:
    """u = t^2 sin(pi x) sin(pi y) on the unit square, K1 = pi^-8, K2 = 1."""
    g1 = math.gamma(2.0 + alpha1)
    g2 = math.gamma(2.0 + alpha2)
    pi6 = math.pi ** 6

    def source(x, y, t):
        return (2.0 * (t + 2.0 * t ** (1 + alpha1) / (pi6 * g1) + t ** (1 + alpha2) / g2)
                * np.sin(np.pi * x) * np.sin(np.pi * y))

    def exact(x, y, t):
        return t * t * np.sin(np.pi * x) * np.sin(np.pi * y)

    return CableProblem2D(alpha1, alpha2, K1=math.pi ** -8, K2=1.0, Lx=1.0, Ly=1.0, T=1.0,
                          source=source, exact=exact)


@dataclass
class RunConfig:
    problem: object
    N: int
    M: tuple
    norm: str = "max-all"
    output: Optional[str] = None
    raw: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return 2 if isinstance(self.problem, CableProblem2D) else 1


_KEYS = {"problem", "alpha1", "alpha2", "K1", "K2", "domain", "T", "N", "M", "M1", "M2",
         "source", "exact", "boundary", "norm", "output"}


def config_from_dict(cfg: dict) -> RunConfig:
    """Build a run from a config mapping (see README for the keys)."""
    unknown = set(cfg) - _KEYS
    if unknown:
        raise DomainError(f"unknown config keys: {sorted(unknown)}")
    kind = cfg.get("problem", "custom")
    try:
        alpha1 = float(cfg["alpha1"])
        alpha2 = float(cfg["alpha2"])
        N = int(cfg["N"])
    except KeyError as exc:
        raise DomainError(f"missing config key {exc.args[0]!r}") from None
    norm = cfg.get("norm", "max-all")
    if norm not in NORMS:
        raise DomainError(f"norm must be one of {NORMS}, got {norm!r}")
    domain = cfg.get("domain", [1.0])
    if np.isscalar(domain):
        domain = [domain]
    domain = [float(d) for d in domain]

    if kind == "example2":
        problem = example2(alpha1, alpha2)
        dim = 1
    elif kind == "example3":
        problem = example3(alpha1, alpha2)
        dim = 2
    elif kind == "custom":
        dim = len(domain)
        if dim not in (1, 2):
            raise DomainError("domain must have one or two lengths")
        params = {"alpha1": alpha1, "alpha2": alpha2,
                  "K1": float(cfg.get("K1", 1.0)), "K2": float(cfg.get("K2", 1.0))}
        space = ("x",) if dim == 1 else ("x", "y")
        names = space + ("t",) + tuple(params)
        source = parse_expression(str(cfg.get("source", "0")), names)
        exact = parse_expression(str(cfg["exact"]), names) if cfg.get("exact") else None
        common = dict(alpha1=alpha1, alpha2=alpha2, K1=params["K1"], K2=params["K2"],
                      T=float(cfg.get("T", 1.0)))
        if dim == 1:
            bnd = cfg.get("boundary", ["0", "0"])
            if isinstance(bnd, str) or len(bnd) != 2:
                raise DomainError("1D boundary must be a pair [phi1(t), phi2(t)]")
            left = parse_expression(str(bnd[0]), ("t",) + tuple(params))
            right = parse_expression(str(bnd[1]), ("t",) + tuple(params))
            problem = CableProblem1D(
                length=domain[0],
                source=lambda x, t: source(x=x, t=t, **params),
                left=lambda t: left(t=t, **params),
                right=lambda t: right(t=t, **params),
                exact=None if exact is None else (lambda x, t: exact(x=x, t=t, **params)),
                **common)
        else:
            bnd = parse_expression(str(cfg.get("boundary", "0")), names)
            problem = CableProblem2D(
                Lx=domain[0], Ly=domain[1],
                source=lambda x, y, t: source(x=x, y=y, t=t, **params),
                boundary=lambda x, y, t: bnd(x=x, y=y, t=t, **params),
                exact=None if exact is None else (lambda x, y, t: exact(x=x, y=y, t=t, **params)),
                **common)
    else:
        raise DomainError(f"unknown problem {kind!r}; use example2, example3 or custom")

    if dim == 1:
        M = (int(cfg.get("M", 0)),)
    else:
        m = cfg.get("M")
        M = (int(cfg.get("M1", m or 0)), int(cfg.get("M2", m or 0)))
    if any(m < 2 for m in M):
        raise DomainError("spatial cell counts must be at least 2")
    return RunConfig(problem, N, M, norm, cfg.get("output"), raw=dict(cfg))


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        cfg = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(cfg, dict):
        raise DomainError(f"{path}: top level must be an object")
    return config_from_dict(cfg)
