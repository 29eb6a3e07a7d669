from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hocohom.errors import ContainmentError, InputError
from hocohom.linalg import (
    QQ,
    PrimeField,
    intersect,
    matmul,
    nullspace,
    quotient_dim,
    rank,
    span_reduce,
    zero_subspace,
)

small_ints = st.integers(min_value=-6, max_value=6)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=1, max_size=max_rows)
    )


def test_span_examples():
    assert span_reduce([(1, 0), (0, 1)], 2).dim == 2
    assert span_reduce([(1, 2), (2, 4)], 2).dim == 1
    s = span_reduce([(1, 1, 0), (0, 1, 1), (1, 0, -1)], 3)
    assert s.dim == 2
    assert sympy.Matrix([[1, 1, 0], [0, 1, 1], [1, 0, -1]]).det() == 0


def test_quotient_examples():
    full = span_reduce([(1, 0, 0), (0, 1, 0), (0, 0, 1)], 3)
    assert quotient_dim(full, zero_subspace(3)) == 3
    assert quotient_dim(full, full) == 0
    u = span_reduce([(1, 0, 0), (0, 1, 0)], 3)
    w = span_reduce([(1, 1, 0)], 3)
    assert quotient_dim(u, w) == 1


def test_quotient_rejects_non_subspace():
    u = span_reduce([(1, 0, 0)], 3)
    w = span_reduce([(0, 1, 0)], 3)
    with pytest.raises(ContainmentError):
        quotient_dim(u, w)


def test_ambient_mismatch():
    with pytest.raises(InputError):
        quotient_dim(zero_subspace(2), zero_subspace(3))


def test_exact_rationals():
    s = span_reduce([(Fraction(1, 3), Fraction(2, 7))], 2)
    assert s.contains((7, 6))
    assert not s.contains((1, 1))


def test_prime_field_arithmetic():
    f = PrimeField(5)
    assert rank([[1, 2], [2, 4]], f) == 1
    assert rank([[1, 0], [0, 5]], f) == 1
    assert rank([[1, 0], [0, 5]], QQ) == 2
    with pytest.raises(InputError):
        PrimeField(6)


def test_nullspace_and_intersection():
    ns = nullspace([[1, 1, 0], [0, 1, 1]], 3)
    assert ns.dim == 1 and ns.contains((1, -1, 1))
    a = span_reduce([(1, 0, 0), (0, 1, 0)], 3)
    b = span_reduce([(0, 1, 0), (0, 0, 1)], 3)
    assert intersect(a, b).dim == 1 and intersect(a, b).contains((0, 1, 0))


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rank_matches_sympy(rows):
    assert rank(rows) == sympy.Matrix(rows).rank()


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_span_reduce_idempotent(rows):
    s = span_reduce(rows, len(rows[0]))
    again = span_reduce(s.basis, len(rows[0]))
    assert again.dim == s.dim
    assert again.issubspace(s) and s.issubspace(again)


@given(matrices(), st.sampled_from([101, 103, 10007]))
@settings(max_examples=60, deadline=None)
def test_rank_mod_large_prime(rows, p):
    # entries are tiny, so any minor is far below p and reduction cannot lose rank
    assert rank(rows, PrimeField(p)) == rank(rows)


@given(matrices(), st.data())
@settings(max_examples=60, deadline=None)
def test_quotient_identity(rows, data):
    n = len(rows[0])
    u = span_reduce(rows, n)
    if u.dim:
        coeffs = data.draw(st.lists(st.lists(small_ints, min_size=u.dim, max_size=u.dim), max_size=4))
        sub = [[sum(c * Fraction(b[j]) for c, b in zip(cs, u.basis)) for j in range(n)] for cs in coeffs]
    else:
        sub = []
    w = span_reduce(sub, n)
    assert quotient_dim(u, w) + w.dim == u.dim


@given(matrices(4, 4), matrices(4, 4))
@settings(max_examples=40, deadline=None)
def test_matmul_matches_sympy(a, b):
    if len(a[0]) != len(b):
        b = [row[: len(b[0])] for row in (b * len(a[0]))[: len(a[0])]]
    expected = sympy.Matrix(a) * sympy.Matrix(b)
    assert sympy.Matrix(matmul(a, b)) == expected
