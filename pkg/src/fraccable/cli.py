"""Command-line interface: ``fraccable <command> ...``.

Exit status: 0 success, 2 invalid input, 1 anything else.
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path

from . import tables
from .errors import DomainError
from .problems import config_from_dict, example1_exponent, load_config
from .rloperator import aligned_steps, derivative_study
from .solver1d import NORMS, solve_1d
from .solver2d import solve_2d
from .stability import BOUND_1D, BOUND_2D, perturbation_growth
from .study import (emit_csv, run_study, table2_study, table3_study, trajectory_rows,
                    write_csv)
from .weights import midpoint_weights_direct, midpoint_weights_recurrence

log = logging.getLogger("fraccable")


def _pair(text: str):
    try:
        a1, a2 = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'a1,a2', got {text!r}") from None
    return a1, a2


def _step_list(text: str):
    try:
        return [float(Fraction(v.strip())) for v in text.split(",") if v.strip()]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad step list {text!r}") from None


def _output(args, name: str, header, rows):
    if args.out:
        path = emit_csv(header, rows, Path(args.out) / name)
        print(f"wrote {path}", file=sys.stderr)
    else:
        sys.stdout.write(write_csv(header, rows))


def cmd_weights(args):
    make = midpoint_weights_direct if args.method == "direct" else midpoint_weights_recurrence
    w = make(args.beta, args.count - 1)
    _output(args, "weights.csv", ["ell", "weight"], [[i, float(v)] for i, v in enumerate(w.weights)])


def cmd_derivative(args):
    beta = args.alpha
    exponent = example1_exponent(beta) if args.exponent is None else args.exponent
    taus = args.taus or aligned_steps(args.t_eval)
    rows = derivative_study(beta, taus, exponent=exponent, t_eval=args.t_eval,
                            aligned=not args.nearest)
    _output(args, "derivative_test.csv", ["tau", "abs_error", "observed_order"],
            [[r["tau"], r["abs_error"], r["observed_order"]] for r in rows])
    ref = tables.TABLE1.get(round(beta, 10))
    if ref and args.nearest:
        for r, (n, e, o) in zip(rows, ref):
            print(f"tau=1/{round(1 / r['tau'])}: error {r['abs_error']:.6e}  (reference 1/{n}: {e:.6e})",
                  file=sys.stderr)


def _load_run(args, dim):
    if args.config:
        run = load_config(args.config)
        if run.dim != dim:
            raise DomainError(f"config describes a {run.dim}D problem")
        return run
    if args.pair is None or args.N is None or args.M is None:
        raise DomainError("give --config FILE or all of --pair, --N, --M")
    cfg = {"problem": "example2" if dim == 1 else "example3",
           "alpha1": args.pair[0], "alpha2": args.pair[1], "N": args.N, "M": args.M}
    return config_from_dict(cfg)


def cmd_solve(args, dim):
    run = _load_run(args, dim)
    norm = args.norm or run.norm
    if dim == 1:
        sol = solve_1d(run.problem, run.N, run.M[0])
        header, rows = trajectory_rows(sol)
        name = "trajectory1d.csv"
    else:
        sol = solve_2d(run.problem, run.N, run.M[0], run.M[1])
        times = sorted({len(sol.t) - 1, *(args.snapshot or [])})
        header, rows = trajectory_rows(sol, times)
        name = "snapshots2d.csv"
    out = args.out or run.output
    if out:
        path = emit_csv(header, rows, Path(out) / name)
        print(f"wrote {path}", file=sys.stderr)
    if sol.errors is not None:
        print(f"{norm}: {sol.errors[norm]:.6e}")
        for k, v in sol.errors.items():
            if k != norm:
                print(f"  {k}: {v:.6e}")


def cmd_study(args, dim):
    pair = tuple(args.pair)
    make = table2_study if dim == 1 else table3_study
    report = run_study(make(pair, levels=args.levels, norm=args.norm or "max-all"), jobs=args.jobs)
    ref = (tables.TABLE2 if dim == 1 else tables.TABLE3).get(pair)
    print(report.format_table(ref), file=sys.stderr)
    _output(args, f"study{dim}d_{pair[0]}_{pair[1]}.csv", report.header(), report.records())


def cmd_stability(args):
    bound = BOUND_1D if args.dim == 1 else BOUND_2D
    ratios = perturbation_growth(*args.pair, N=args.N, M=args.M, dim=args.dim,
                                 trials=args.trials, seed=args.seed)
    worst = float(ratios.max())
    print(f"max growth {worst:.6f} (bound {bound:.6f}) -> {'ok' if worst <= bound else 'VIOLATED'}")
    if worst > bound:
        log.warning("stability bound exceeded")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fraccable", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", metavar="DIR", help="directory for CSV output (default: stdout)")

    sp = sub.add_parser("weights", help="midpoint weights for order B")
    sp.add_argument("--beta", type=float, required=True)
    sp.add_argument("--count", type=int, required=True)
    sp.add_argument("--method", choices=("recurrence", "direct"), default="recurrence")
    common(sp)
    sp.set_defaults(func=cmd_weights)

    sp = sub.add_parser("derivative-test", help="accuracy of the midpoint RL formula on t^p")
    sp.add_argument("--alpha", type=float, required=True, help="derivative order")
    sp.add_argument("--taus", type=_step_list, help="comma list, fractions allowed (1/21,1/41)")
    sp.add_argument("--exponent", type=float, help="test function t^p (default 3 - alpha)")
    sp.add_argument("--t-eval", type=float, default=0.5)
    sp.add_argument("--nearest", action="store_true",
                    help="use k = round(t_eval/tau) instead of requiring alignment")
    common(sp)
    sp.set_defaults(func=cmd_derivative)

    for dim in (1, 2):
        sp = sub.add_parser(f"solve{dim}d", help=f"solve a {dim}D Cable problem")
        sp.add_argument("--config", metavar="FILE")
        sp.add_argument("--pair", type=_pair)
        sp.add_argument("--N", type=int)
        sp.add_argument("--M", type=int)
        sp.add_argument("--norm", choices=NORMS)
        if dim == 2:
            sp.add_argument("--snapshot", type=int, nargs="*", help="extra level indices to dump")
        common(sp)
        sp.set_defaults(func=lambda a, d=dim: cmd_solve(a, d))

        sp = sub.add_parser(f"study{dim}d", help=f"refinement study, {dim}D example")
        sp.add_argument("--preset", choices=("table2",) if dim == 1 else ("table3",),
                        default="table2" if dim == 1 else "table3")
        sp.add_argument("--pair", type=_pair, required=True)
        sp.add_argument("--levels", type=int, default=5)
        sp.add_argument("--norm", choices=NORMS)
        sp.add_argument("--jobs", type=int, default=1)
        common(sp)
        sp.set_defaults(func=lambda a, d=dim: cmd_study(a, d))

    sp = sub.add_parser("stability", help="random initial-perturbation growth")
    sp.add_argument("--dim", type=int, choices=(1, 2), default=1)
    sp.add_argument("--pair", type=_pair, default=(0.5, 0.5))
    sp.add_argument("--N", type=int, default=64)
    sp.add_argument("--M", type=int, default=16)
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_stability)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
