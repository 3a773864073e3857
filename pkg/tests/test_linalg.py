from __future__ import annotations

from fractions import Fraction

from hypothesis import given, settings, strategies as st
from sympy import Matrix
from sympy.matrices.normalforms import smith_normal_form

from oracles import determinantal_divisors
from twistweyl.linalg import Echelon, elementary_divisors, rank

small = st.integers(-4, 4)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def as_sparse(M):
    return [{j: x for j, x in enumerate(row) if x} for row in M]


@settings(max_examples=80, deadline=None)
@given(matrices())
def test_rank_matches_sympy(M):
    assert rank(as_sparse(M)) == Matrix(M).rank()


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_reduced_rows_span_and_pivots(M):
    e = Echelon()
    for v in as_sparse(M):
        e.add(v)
    red = e.reduced_rows()
    for p, row in red.items():
        assert row[p] == 1
        assert all(q == p or q not in row for q in red)
    for v in as_sparse(M):
        assert e.contains(v)


def test_add_returns_none_for_dependent():
    e = Echelon()
    assert e.add({0: 1, 1: 2}) is not None
    assert e.add({0: 2, 1: 4}) is None
    assert e.reduce({0: Fraction(1, 2), 1: 1}) == {}


@settings(max_examples=60, deadline=None)
@given(matrices(3, 3))
def test_divisors_match_minors(M):
    assert elementary_divisors(M) == determinantal_divisors(M)


@settings(max_examples=40, deadline=None)
@given(matrices(3, 4))
def test_divisors_match_sympy_snf(M):
    from sympy import ZZ
    snf = smith_normal_form(Matrix(M), domain=ZZ)
    diag = [abs(int(snf[i, i])) for i in range(min(snf.shape)) if snf[i, i] != 0]
    assert sorted(elementary_divisors(M)) == sorted(diag)


def test_divisors_known():
    assert elementary_divisors([[2, 4], [6, 8]]) == [2, 4]
    assert elementary_divisors([]) == []
