"""Exact rank/kernel computations, cross-checked against sympy."""

import random
from fractions import Fraction

import sympy

from sullivan.fields import QQ
from sullivan.linalg import kernel_basis, rank, reduce_against, row_reduce


def F(x, y=1):
    return Fraction(x, y)


def test_identity_matrix():
    rows = [[F(1), F(0), F(0)], [F(0), F(1), F(0)], [F(0), F(0), F(1)]]
    assert rank(rows, QQ) == 3
    assert kernel_basis(rows, QQ, 3) == []


def test_zero_matrix():
    rows = [[F(0)] * 4 for _ in range(3)]
    assert rank(rows, QQ) == 0
    kern = kernel_basis(rows, QQ, 4)
    assert len(kern) == 4
    for i, v in enumerate(kern):
        assert v[i] == 1


def test_proportional_rows():
    rows = [[F(1), F(2)], [F(2), F(4)]]
    assert rank(rows, QQ) == 1
    kern = kernel_basis(rows, QQ, 2)
    assert kern == [[F(-2), F(1)]]


def _random_matrix(rng, n, m):
    return [[F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(m)] for _ in range(n)]


def test_rank_matches_sympy_and_kernel_annihilates():
    rng = random.Random(21)
    for _ in range(25):
        n, m = rng.randint(1, 6), rng.randint(1, 6)
        rows = _random_matrix(rng, n, m)
        r = rank(rows, QQ)
        assert r == sympy.Matrix(rows).rank()
        kern = kernel_basis(rows, QQ, m)
        assert len(kern) == m - r
        for v in kern:
            for row in rows:
                assert sum(a * b for a, b in zip(row, v)) == 0


def test_reduce_against_row_space():
    rows = [[F(1), F(0), F(2)], [F(0), F(1), F(-1)]]
    red, pivots = row_reduce(rows, QQ)
    v = reduce_against([F(3), F(2), F(4)], red, pivots)
    assert v[:2] == [F(0), F(0)]
    # reduced vector differs from the original by a row-space element
    assert v == [F(0), F(0), F(4) - F(3) * F(2) - F(2) * F(-1)]
