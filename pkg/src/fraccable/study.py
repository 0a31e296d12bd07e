"""Refinement studies, observed orders and CSV emission."""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError
from .problems import example2, example3
from .solver1d import NORMS, solve_1d
from .solver2d import solve_2d

__all__ = [
    "compute_orders",
    "coupled_ladder",
    "RefinementStudy",
    "ReportRow",
    "ErrorReport",
    "run_study",
    "table2_study",
    "table3_study",
    "format_float",
    "write_csv",
    "emit_csv",
    "trajectory_rows",
]


def compute_orders(errors: Sequence[float], taus: Sequence[float],
                   hs: Optional[Sequence[float]] = None):
    """Observed orders between consecutive levels.

    TCO_i = ln(e_{i-1}/e_i) / ln(tau_{i-1}/tau_i), SCO_i likewise with h.
    Both lists have len(errors) - 1 entries (SCO is empty when ``hs`` is None).
    """
    errors = [float(e) for e in errors]
    if any(not e > 0 for e in errors):
        raise DomainError("errors must be positive to define an order")

    def ladder(steps, name):
        steps = [float(s) for s in steps]
        if len(steps) != len(errors):
            raise ValueError(f"{len(errors)} errors but {len(steps)} {name} values")
        if any(b >= a for a, b in zip(steps, steps[1:])) or any(s <= 0 for s in steps):
            raise DomainError(f"{name} must be positive and strictly decreasing")
        return [math.log(errors[i - 1] / errors[i]) / math.log(steps[i - 1] / steps[i])
                for i in range(1, len(steps))]

    tco = ladder(taus, "tau")
    sco = ladder(hs, "h") if hs is not None else []
    return tco, sco


def coupled_ladder(levels: int = 5) -> list[tuple[int, int]]:
    """(N, M) = (5 m^2, 5 m), m = 1..levels: tau shrinks like h^2."""
    return [(5 * m * m, 5 * m) for m in range(1, levels + 1)]


@dataclass
class RefinementStudy:
    """A family of runs of one problem on successively finer grids.

    ``make_problem`` is called once per level; ``levels`` holds (N, M) pairs,
    M being the cell count along every space axis.
    """

    make_problem: Callable
    levels: list
    dim: int = 1
    norm: str = "max-all"
    label: str = ""

    def __post_init__(self):
        if not self.levels:
            raise DomainError("a study needs at least one level")
        if self.dim not in (1, 2):
            raise DomainError(f"dim must be 1 or 2, got {self.dim!r}")
        if self.norm not in NORMS:
            raise DomainError(f"norm must be one of {NORMS}, got {self.norm!r}")
        Ns = [lv[0] for lv in self.levels]
        Ms = [lv[1] for lv in self.levels]
        if any(b <= a for a, b in zip(Ns, Ns[1:])) or any(b < a for a, b in zip(Ms, Ms[1:])):
            raise DomainError("levels must refine: N strictly increasing, M non-decreasing")


@dataclass
class ReportRow:
    N: int
    M: int
    tau: float
    h: float
    error: float
    tco: Optional[float] = None
    sco: Optional[float] = None
    norms: dict = field(default_factory=dict, repr=False)


@dataclass
class ErrorReport:
    rows: list
    norm: str
    dim: int = 1
    label: str = ""

    @property
    def errors(self) -> list:
        return [r.error for r in self.rows]

    def header(self) -> list:
        return ["tau", "h", "error", "tco", "sco"] if self.dim == 1 else \
            ["tau", "hx", "hy", "error", "tco", "sco"]

    def records(self) -> list:
        out = []
        for r in self.rows:
            hs = [r.h] if self.dim == 1 else [r.h, r.h]
            out.append([r.tau, *hs, r.error, r.tco, r.sco])
        return out

    def to_csv(self) -> str:
        return write_csv(self.header(), self.records())

    def format_table(self, reference=None) -> str:
        """Plain-text table; ``reference`` rows are (N, M, error, tco, sco)."""
        lines = [f"{'tau':>10} {'h':>8} {'error':>14} {'TCO':>8} {'SCO':>8}"
                 + ("     ref error      ref TCO" if reference else "")]
        for i, r in enumerate(self.rows):
            tco = "---" if r.tco is None else f"{r.tco:.4f}"
            sco = "---" if r.sco is None else f"{r.sco:.4f}"
            line = f"{'1/%d' % r.N:>10} {'1/%d' % r.M:>8} {r.error:14.6e} {tco:>8} {sco:>8}"
            if reference and i < len(reference):
                ref = reference[i]
                line += f"   {ref[2]:12.6e}    " + ("---" if ref[3] is None else f"{ref[3]:.4f}")
            lines.append(line)
        return "\n".join(lines)


def _run_level(study: RefinementStudy, level):
    N, M = level[0], level[1]
    problem = study.make_problem()
    if problem.exact is None:
        raise DomainError("a refinement study needs a problem with an exact solution")
    if study.dim == 1:
        sol = solve_1d(problem, N, M)
        h = problem.length / M
    else:
        sol = solve_2d(problem, N, M, M)
        h = problem.Lx / M
    return ReportRow(N=N, M=M, tau=problem.T / N, h=h,
                     error=sol.errors[study.norm], norms=dict(sol.errors))


def run_study(study: RefinementStudy, jobs: int = 1) -> ErrorReport:
    """Run every level (optionally in threads) and attach observed orders.

    Results come back in declaration order whatever ``jobs`` is.
    """
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(lambda lv: _run_level(study, lv), study.levels))
    else:
        rows = [_run_level(study, lv) for lv in study.levels]
    if len(rows) > 1 and all(r.error > 0 for r in rows):
        tco, sco = compute_orders([r.error for r in rows], [r.tau for r in rows],
                                  [r.h for r in rows])
        for r, t in zip(rows[1:], tco):
            r.tco = t
        for r, s in zip(rows[1:], sco):
            r.sco = s
    return ErrorReport(rows, study.norm, study.dim, study.label)


def table2_study(pair, levels: int = 5, norm: str = "max-all") -> RefinementStudy:
    a1, a2 = pair
    return RefinementStudy(lambda: example2(a1, a2), coupled_ladder(levels), dim=1,
                           norm=norm, label=f"example2 {a1},{a2}")


def table3_study(pair, levels: int = 5, norm: str = "max-all") -> RefinementStudy:
    a1, a2 = pair
    return RefinementStudy(lambda: example3(a1, a2), coupled_ladder(levels), dim=2,
                           norm=norm, label=f"example3 {a1},{a2}")


def format_float(v) -> str:
    """9 significant digits; empty cell for None."""
    if v is None:
        return ""
    return format(float(v), ".9g")


def write_csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([format_float(v) if isinstance(v, (float, np.floating)) or v is None else v
                    for v in row])
    return buf.getvalue()


def emit_csv(header: Sequence[str], rows, destination) -> Path:
    """Write a CSV file (header always present, LF endings) and return its path."""
    path = Path(destination)
    text = write_csv(header, rows)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8", newline="")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def trajectory_rows(solution, times=None):
    """Flatten a 1D or 2D solution into CSV rows.

    1D columns: t, x, u, exact, abs_error.  2D: t, x, y, u, exact, abs_error.
    ``times`` restricts output to the given level indices (default: all).
    """
    is2d = hasattr(solution, "y")
    header = ["t", "x", "y", "u", "exact", "abs_error"] if is2d else ["t", "x", "u", "exact", "abs_error"]
    rows = []
    levels = range(len(solution.t)) if times is None else times
    for k in levels:
        t = float(solution.t[k])
        u = solution.u[k]
        ex = solution.exact[k] if solution.exact is not None else None
        if is2d:
            for i, x in enumerate(solution.x):
                for j, y in enumerate(solution.y):
                    e = None if ex is None else float(ex[i, j])
                    rows.append([t, float(x), float(y), float(u[i, j]), e,
                                 None if e is None else abs(float(u[i, j]) - e)])
        else:
            for j, x in enumerate(solution.x):
                e = None if ex is None else float(ex[j])
                rows.append([t, float(x), float(u[j]), e,
                             None if e is None else abs(float(u[j]) - e)])
    return header, rows
