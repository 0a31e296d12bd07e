"""Second-order midpoint Riemann-Liouville quadrature and compact solvers
for the time-fractional Cable equation in one and two space dimensions."""

from .errors import DomainError, ExpressionError, StateError
from .weights import (WeightSequence, binomial_weights, generating_function_eval,
                      midpoint_weights, midpoint_weights_direct,
                      midpoint_weights_recurrence, symbol_min_scan)
from .rloperator import (TimeHistory, exact_rl_monomial, gl_first_order_apply,
                         history_convolution, midpoint_rl_apply)
from .compact1d import Grid1D, compact_L, delta_x2, inner, norm, solve_compact
from .solver1d import CableProblem1D, MarchState1D, solve_1d
from .solver2d import CableProblem2D, MarchState2D, factored_compact_solve, solve_2d
from .expression import Expression, parse_expression
from .study import ErrorReport, RefinementStudy, compute_orders, run_study

__version__ = "0.1.0"

__all__ = [
    "DomainError", "ExpressionError", "StateError",
    "WeightSequence", "binomial_weights", "generating_function_eval", "midpoint_weights",
    "midpoint_weights_direct", "midpoint_weights_recurrence", "symbol_min_scan",
    "TimeHistory", "exact_rl_monomial", "gl_first_order_apply", "history_convolution",
    "midpoint_rl_apply",
    "Grid1D", "compact_L", "delta_x2", "inner", "norm", "solve_compact",
    "CableProblem1D", "MarchState1D", "solve_1d",
    "CableProblem2D", "MarchState2D", "factored_compact_solve", "solve_2d",
    "Expression", "parse_expression",
    "ErrorReport", "RefinementStudy", "compute_orders", "run_study",
]
