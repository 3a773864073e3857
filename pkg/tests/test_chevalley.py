from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from twistweyl.chevalley import build_chevalley, jacobi_defects


@pytest.mark.parametrize("t", ["A1", "A3", "B2", "C3", "D4", "G2"])
def test_jacobi(t):
    assert jacobi_defects(build_chevalley(t)) == []


@pytest.mark.parametrize("t", ["A3", "B3", "G2", "F4"])
def test_integral_constants(t):
    alg = build_chevalley(t)
    assert all(c == int(c) for terms in alg.table.values() for _, c in terms)


def test_sl2_relations():
    alg = build_chevalley("A1")
    e, f, h = alg.x((1,)), alg.x((-1,)), alg.h(0)
    assert alg.bracket({e: 1}, {f: 1}) == {h: 1}
    assert alg.bracket({h: 1}, {e: 1}) == {e: 2}


def _vec(alg):
    return st.dictionaries(st.integers(0, alg.dim - 1), st.integers(-3, 3).filter(bool), max_size=4)


G2 = build_chevalley("G2")


@settings(max_examples=60, deadline=None)
@given(_vec(G2), _vec(G2))
def test_antisymmetry(u, v):
    a = G2.bracket(u, v)
    b = G2.bracket(v, u)
    keys = set(a) | set(b)
    assert all(a.get(k, 0) == -b.get(k, 0) for k in keys)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, G2.dim - 1))
def test_weights_additive(i):
    for j in range(G2.dim):
        for k, _ in G2.table.get((i, j), ()):
            assert G2.weight(k) == tuple(a + b for a, b in zip(G2.weight(i), G2.weight(j)))
