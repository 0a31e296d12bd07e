import math
import re

import numpy as np
import pytest
from hypothesis import HealthCheck, assume, given, settings, strategies as st
from scipy.special import gamma

from fraccable.errors import ExpressionError
from fraccable.expression import parse_expression

ENV = {"x": 0.3, "y": 1.7, "t": 0.9, "pi": math.pi, "e": math.e}
FUNCS = {"sin": np.sin, "cos": np.cos, "exp": np.exp, "sqrt": np.sqrt, "gamma": gamma,
         "pow": np.power}


class Reference:
    """Evaluates while scanning the text; no tree is built."""

    def __init__(self, text):
        self.toks = re.findall(r"\d+\.?\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?|[A-Za-z_]\w*|\S",
                               text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        self.i += 1
        return self.toks[self.i - 1]

    def run(self):
        v = self.sum()
        assert self.peek() is None
        return v

    def sum(self):
        v = self.product()
        while self.peek() in ("+", "-"):
            v = v + self.product() if self.take() == "+" else v - self.product()
        return v

    def product(self):
        v = self.signed()
        while self.peek() in ("*", "/"):
            v = v * self.signed() if self.take() == "*" else np.divide(v, self.signed())
        return v

    def signed(self):
        if self.peek() == "-":
            self.take()
            return -self.signed()
        if self.peek() == "+":
            self.take()
            return self.signed()
        base = self.atom()
        if self.peek() == "^":
            self.take()
            return np.power(np.float64(base), self.signed())
        return base

    def atom(self):
        tok = self.take()
        if tok == "(":
            v = self.sum()
            assert self.take() == ")"
            return v
        if tok in FUNCS:
            assert self.take() == "("
            args = [self.sum()]
            while self.peek() == ",":
                self.take()
                args.append(self.sum())
            assert self.take() == ")"
            return FUNCS[tok](*args)
        if tok in ENV:
            return ENV[tok]
        return float(tok)


def reference(text):
    with np.errstate(all="ignore"):
        return float(Reference(text).run())


numbers = st.sampled_from(["0", "1", "2", "0.5", "3.25", "10", "1e-3", "2.5E1", ".75"])
atoms = numbers | st.sampled_from(["x", "y", "t", "pi", "e"])


def _combine(children):
    unary = st.sampled_from(["sin", "cos", "exp", "sqrt", "gamma"])
    return (st.tuples(children, st.sampled_from(["+", "-", "*", "/", "^"]), children)
            .map(lambda p: f"{p[0]} {p[1]} {p[2]}")
            | children.map(lambda c: f"({c})")
            | children.map(lambda c: f"-{c}")
            | st.tuples(unary, children).map(lambda p: f"{p[0]}({p[1]})")
            | st.tuples(children, children).map(lambda p: f"pow({p[0]}, {p[1]})"))


expressions = st.recursive(atoms, _combine, max_leaves=12)


@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(text=expressions)
def test_print_parse_fixed_point_and_reference(text):
    e = parse_expression(text)
    printed = str(e)
    again = parse_expression(printed)
    assert again == e
    assert str(again) == printed
    ref = reference(text)
    assume(math.isfinite(ref))
    got = float(e(x=ENV["x"], y=ENV["y"], t=ENV["t"]))
    assert got == pytest.approx(ref, rel=1e-14, abs=1e-14)
    assert float(again(x=ENV["x"], y=ENV["y"], t=ENV["t"])) == pytest.approx(ref, rel=1e-14,
                                                                              abs=1e-14)


@pytest.mark.parametrize("text,value", [
    ("1 + 2 * 3", 7.0),
    ("(1 + 2) * 3", 9.0),
    ("2^3^2", 512.0),
    ("-2^2", -4.0),
    ("2^-1", 0.5),
    ("8 / 4 / 2", 1.0),
    ("10 - 4 - 3", 3.0),
    ("pow(2, 10)", 1024.0),
    ("sqrt(16) + gamma(5)", 28.0),
    ("cos(pi)", -1.0),
    ("+3", 3.0),
])
def test_examples(text, value):
    assert parse_expression(text)() == pytest.approx(value, rel=1e-15)


def test_gamma_example():
    e = parse_expression("gamma(3.5) / gamma(3) * t^2")
    assert e(t=1.0) == pytest.approx(math.gamma(3.5) / 2, rel=1e-14)


def test_vectorised_and_names():
    e = parse_expression("t^2 * sin(pi * x)")
    x = np.linspace(0, 1, 5)
    np.testing.assert_allclose(e(x=x, t=2.0), 4 * np.sin(np.pi * x), atol=1e-15)
    assert e.free_names == {"t", "x"}
    with pytest.raises(NameError):
        e(t=1.0)


def test_printer_precedence():
    assert str(parse_expression("(x + y) * t")) == "(x + y) * t"
    assert str(parse_expression("x - (y - t)")) == "x - (y - t)"
    assert str(parse_expression("(x^y)^t")) == "(x^y)^t"
    assert str(parse_expression("-t^2")) == "-t^2"
    assert str(parse_expression("(-t)^2")) == "(-t)^2"


@pytest.mark.parametrize("text,offset", [
    ("x + ", 4),
    ("x $ 2", 2),
    ("sin(x", 5),
    ("foo(x)", 0),
    ("x + z", 4),
    ("pow(x)", 0),
    ("sin", 0),
    ("(x))", 3),
    ("", 0),
    ("é + x", 0),
    ("x + é", 4),
])
def test_error_offsets(text, offset):
    with pytest.raises(ExpressionError) as info:
        parse_expression(text)
    assert info.value.offset == offset
    assert f"byte offset {offset}" in str(info.value)


def test_custom_names():
    e = parse_expression("alpha1 * t", names=("t", "alpha1"))
    assert e(t=2.0, alpha1=0.25) == pytest.approx(0.5)
    with pytest.raises(ExpressionError):
        parse_expression("alpha1 * t")
