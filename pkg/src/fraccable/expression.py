"""Small arithmetic expression language for user-supplied source terms.

Grammar (lowest to highest precedence)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := ('-' | '+') unary | power
    power   := primary ('^' unary)?          # right associative
    primary := NUMBER | NAME | NAME '(' expr (',' expr)* ')' | '(' expr ')'

Unary minus binds looser than ``^``, so ``-t^2`` is ``-(t^2)`` and
``2^-1`` is ``2^(-1)``.  Evaluation is vectorised through numpy.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy.special import gamma as _gamma

from .errors import ExpressionError

__all__ = ["Expression", "parse_expression", "FUNCTIONS", "CONSTANTS"]

FUNCTIONS = {
    "sin": (1, np.sin),
    "cos": (1, np.cos),
    "exp": (1, np.exp),
    "sqrt": (1, np.sqrt),
    "gamma": (1, _gamma),
    "pow": (2, np.power),
}
CONSTANTS = {"pi": math.pi, "e": math.e}
DEFAULT_VARIABLES = ("x", "y", "t")

# precedence levels used by the printer
_ADD, _MUL, _UNARY, _POW, _ATOM = 1, 2, 3, 4, 5


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Name:
    ident: str


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),])
""", re.VERBOSE)


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExpressionError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos))
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


class _Parser:
    def __init__(self, text: str, names: set):
        self.text = text
        self.names = names
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return ExpressionError(message, _byte_offset(self.text, tok[2]))

    def accept(self, value):
        if self.tok[0] == "op" and self.tok[1] == value:
            self.i += 1
            return True
        return False

    def expect(self, value):
        if not self.accept(value):
            found = self.tok[1] or "end of input"
            raise self.error(f"expected {value!r}, found {found!r}")

    def parse(self):
        node = self.expr()
        if self.tok[0] != "end":
            raise self.error(f"unexpected {self.tok[1]!r}")
        return node

    def expr(self):
        node = self.term()
        while self.tok[0] == "op" and self.tok[1] in "+-":
            op = self.tok[1]
            self.i += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.tok[0] == "op" and self.tok[1] in "*/":
            op = self.tok[1]
            self.i += 1
            node = BinOp(op, node, self.unary())
        return node

    def unary(self):
        if self.accept("-"):
            return Neg(self.unary())
        if self.accept("+"):
            return self.unary()
        return self.power()

    def power(self):
        base = self.primary()
        if self.accept("^"):
            return BinOp("^", base, self.unary())
        return base

    def primary(self):
        kind, value, _ = tok = self.tok
        if kind == "num":
            self.i += 1
            return Num(float(value))
        if kind == "name":
            self.i += 1
            if self.tok[0] == "op" and self.tok[1] == "(":
                if value not in FUNCTIONS:
                    raise self.error(f"unknown function {value!r}", tok)
                self.i += 1
                args = [self.expr()]
                while self.accept(","):
                    args.append(self.expr())
                self.expect(")")
                arity = FUNCTIONS[value][0]
                if len(args) != arity:
                    raise self.error(f"{value}() takes {arity} argument(s), got {len(args)}", tok)
                return Call(value, tuple(args))
            if value in FUNCTIONS:
                raise self.error(f"function {value!r} needs arguments", tok)
            if value not in self.names and value not in CONSTANTS:
                raise self.error(f"unknown identifier {value!r}", tok)
            return Name(value)
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        found = value or "end of input"
        raise self.error(f"unexpected {found!r}")


def _prec(node) -> int:
    if isinstance(node, BinOp):
        return {"+": _ADD, "-": _ADD, "*": _MUL, "/": _MUL, "^": _POW}[node.op]
    if isinstance(node, Neg):
        return _UNARY
    return _ATOM


def _to_text(node) -> str:
    if isinstance(node, Num):
        v = node.value
        return str(int(v)) if v.is_integer() and abs(v) < 1e15 else repr(v)
    if isinstance(node, Name):
        return node.ident
    if isinstance(node, Call):
        return f"{node.func}({', '.join(_to_text(a) for a in node.args)})"
    if isinstance(node, Neg):
        inner = _to_text(node.operand)
        return f"-({inner})" if _prec(node.operand) < _UNARY else f"-{inner}"
    p = _prec(node)
    left, right = _to_text(node.left), _to_text(node.right)
    if node.op == "^":
        if _prec(node.left) <= _POW:
            left = f"({left})"
        if _prec(node.right) < _UNARY:
            right = f"({right})"
        return f"{left}^{right}"
    if _prec(node.left) < p:
        left = f"({left})"
    if _prec(node.right) <= p:
        right = f"({right})"
    return f"{left} {node.op} {right}"


def _eval(node, env):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Name):
        return env[node.ident]
    if isinstance(node, Neg):
        return -_eval(node.operand, env)
    if isinstance(node, Call):
        return FUNCTIONS[node.func][1](*(_eval(a, env) for a in node.args))
    a = _eval(node.left, env)
    b = _eval(node.right, env)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    if node.op == "/":
        return np.divide(a, b)
    return np.power(np.asarray(a, dtype=float), b)


def _names(node, acc: set):
    if isinstance(node, Name):
        acc.add(node.ident)
    elif isinstance(node, Neg):
        _names(node.operand, acc)
    elif isinstance(node, BinOp):
        _names(node.left, acc)
        _names(node.right, acc)
    elif isinstance(node, Call):
        for a in node.args:
            _names(a, acc)
    return acc


class Expression:
    """Parsed expression; call it with keyword arrays, e.g. ``e(x=xs, t=0.5)``."""

    def __init__(self, tree, source: str = ""):
        self.tree = tree
        self.source = source

    def __str__(self) -> str:
        return _to_text(self.tree)

    def __repr__(self) -> str:
        return f"Expression({str(self)!r})"

    def __eq__(self, other):
        return isinstance(other, Expression) and self.tree == other.tree

    def __hash__(self):
        return hash(self.tree)

    @property
    def free_names(self) -> set:
        return _names(self.tree, set()) - set(CONSTANTS)

    def __call__(self, **values):
        env = dict(CONSTANTS)
        env.update(values)
        missing = self.free_names - set(env)
        if missing:
            raise NameError(f"no value for {sorted(missing)}")
        with np.errstate(all="ignore"):
            out = _eval(self.tree, env)
        out = np.asarray(out, dtype=float)
        return out[()] if out.ndim == 0 else out

    evaluate = __call__


def parse_expression(text: str, names: Iterable[str] = DEFAULT_VARIABLES) -> Expression:
    """Parse ``text``; identifiers must be in ``names`` or be a known constant."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    return Expression(_Parser(text, set(names)).parse(), text)
