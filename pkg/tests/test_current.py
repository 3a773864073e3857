from __future__ import annotations

import pytest

from twistweyl.current import build_truncated, jacobi_defects
from twistweyl.folding import fold


@pytest.mark.parametrize("typ,aut", [("A1", "id"), ("A3", "order2"), ("A2", "order2")])
def test_jacobi(typ, aut):
    assert jacobi_defects(build_truncated(fold(typ, aut), 3)) == []


def test_grading():
    fa = fold("A3", "order2")
    tca = build_truncated(fa, 4)
    for r in range(4):
        for i in tca.grade_basis(r):
            # g_eps sits in t-degrees congruent to -eps mod m
            assert (tca.eps(i) + r) % fa.m == 0
    assert sum(len(tca.grade_basis(r)) for r in range(4)) == tca.dim


def test_truncation_kills_high_degree():
    tca = build_truncated(fold("A1", "id"), 2)
    a = tca.element("x+", (1,), 1)
    assert tca.bracket({a: 1}, {a: 1}) == {}
    b = tca.element("x-", (1,), 1)
    assert tca.bracket({a: 1}, {b: 1}) == {}
