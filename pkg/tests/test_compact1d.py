import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fraccable.compact1d import (Grid1D, compact_L, compact_matrix, delta_x2, inner, norm,
                                 solve_compact, solve_tridiagonal)
from fraccable.errors import DomainError


def dense_compact_system(m, rhs, left, right):
    # full (M+1)-node system with identity rows at both ends
    A = np.zeros((m + 1, m + 1))
    A[0, 0] = A[m, m] = 1.0
    for j in range(1, m):
        A[j, j - 1:j + 2] = [1 / 12, 10 / 12, 1 / 12]
    b = np.concatenate([[left], rhs, [right]])
    return np.linalg.solve(A, b)


def test_grid():
    g = Grid1D(2.0, 4)
    assert g.h == 0.5
    np.testing.assert_allclose(g.nodes, [0, 0.5, 1, 1.5, 2])
    assert g.zeros().shape == (5,)
    with pytest.raises(DomainError):
        Grid1D(1.0, 1)
    with pytest.raises(DomainError):
        Grid1D(0.0, 4)


def test_stencils_on_quadratic():
    x = np.linspace(0, 1, 6)
    u = x ** 2
    d = delta_x2(u, 0.2)
    np.testing.assert_allclose(d[1:-1], 2.0)
    assert d[0] == 0 and d[-1] == 0
    L = compact_L(u)
    assert L[0] == u[0] and L[-1] == u[-1]
    np.testing.assert_allclose(L[1:-1], x[1:-1] ** 2 + 0.2 ** 2 / 6)


def test_compact_of_constant_is_constant():
    np.testing.assert_allclose(compact_L(np.full(9, 3.5)), 3.5)


def test_second_difference_order_two():
    errs = []
    for m in (16, 32, 64):
        x = np.linspace(0, 1, m + 1)
        d = delta_x2(np.sin(np.pi * x), 1 / m)
        errs.append(np.abs(d[1:-1] + np.pi ** 2 * np.sin(np.pi * x[1:-1])).max())
    assert math.log2(errs[0] / errs[1]) == pytest.approx(2, abs=0.05)
    assert math.log2(errs[1] / errs[2]) == pytest.approx(2, abs=0.05)


def test_solve_compact_against_dense():
    rng = np.random.default_rng(3)
    rhs = rng.standard_normal(3)
    u = solve_compact(rhs, 0.7, -1.2)
    np.testing.assert_allclose(u, dense_compact_system(4, rhs, 0.7, -1.2), atol=1e-14)
    np.testing.assert_allclose(compact_L(u)[1:-1], rhs, atol=1e-14)


def test_solve_compact_batched():
    rng = np.random.default_rng(4)
    rhs = rng.standard_normal((7, 5))
    left = rng.standard_normal(5)
    u = solve_compact(rhs, left, 0.0)
    for c in range(5):
        np.testing.assert_allclose(u[:, c], dense_compact_system(8, rhs[:, c], left[c], 0.0),
                                   atol=1e-13)


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 40), seed=st.integers(0, 2 ** 16))
def test_thomas_against_dense(n, seed):
    rng = np.random.default_rng(seed)
    lower = rng.uniform(-1, 1, n - 1)
    upper = rng.uniform(-1, 1, n - 1)
    diag = 3.0 + rng.uniform(0, 1, n)
    rhs = rng.standard_normal((n, 2))
    A = np.diag(diag) + np.diag(lower, -1) + np.diag(upper, 1)
    np.testing.assert_allclose(solve_tridiagonal(lower, diag, upper, rhs),
                               np.linalg.solve(A, rhs), atol=1e-12)


def test_thomas_shape_check():
    with pytest.raises(ValueError):
        solve_tridiagonal([1.0], [4.0, 4.0], [1.0], np.ones(3))


@settings(max_examples=50, deadline=None)
@given(m=st.integers(2, 64), seed=st.integers(0, 2 ** 16))
def test_rayleigh_quotient_bounds(m, seed):
    rng = np.random.default_rng(seed)
    u = np.zeros(m + 1)
    u[1:-1] = rng.standard_normal(m - 1)
    h = 1.0 / m
    q = inner(compact_L(u), u, h) / inner(u, u, h)
    assert 2 / 3 <= q <= 1


def test_summation_by_parts():
    rng = np.random.default_rng(5)
    m, h = 12, 1 / 12
    u = np.zeros(m + 1)
    v = np.zeros(m + 1)
    u[1:-1] = rng.standard_normal(m - 1)
    v[1:-1] = rng.standard_normal(m - 1)
    lhs = inner(delta_x2(u, h), v, h)
    rhs = -h * np.sum(np.diff(u) / h * np.diff(v) / h)
    assert lhs == pytest.approx(rhs, rel=1e-12)


def test_inner_and_norm():
    assert norm(np.ones(11), 0.1) ** 2 == pytest.approx(0.9)
    with pytest.raises(ValueError):
        inner(np.ones(4), np.ones(5), 0.1)


def test_compact_matrix_spectrum():
    for m in (4, 16, 64):
        ev = np.linalg.eigvalsh(compact_matrix(m))
        assert ev.min() > 2 / 3 and ev.max() < 1


def test_fourth_order_identity():
    # L^{-1} delta^2 u reproduces u'' to fourth order
    errs, hs = [], []
    for m in (8, 16, 32, 64):
        x = np.linspace(0, 1, m + 1)
        u = np.exp(x) * np.sin(2 * x)
        upp = np.exp(x) * (-3 * np.sin(2 * x) + 4 * np.cos(2 * x))
        w = solve_compact(delta_x2(u, 1 / m)[1:-1], upp[0], upp[-1])
        errs.append(np.abs(w - upp).max())
        hs.append(1 / m)
    order = math.log(errs[-2] / errs[-1]) / math.log(hs[-2] / hs[-1])
    assert 3.8 <= order <= 4.2
