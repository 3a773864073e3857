from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from oracles import sl2_weyl_character
from twistweyl.affine_demazure import (
    AffineError,
    braid_pairs,
    build_affine_data,
    coroot_evaluation_table,
    demazure_operator,
    graded_demazure,
    rhat_printed,
    rhat_value,
)
from twistweyl.folding import fold
from twistweyl.rootdata import build_root_system, reflect, weyl_character

ARD = build_affine_data(fold("D4", "order3"))
chars = st.dictionaries(
    st.tuples(st.tuples(*[st.integers(-3, 3)] * ARD.rank), st.integers(-2, 2)),
    st.integers(-3, 3).filter(bool), min_size=1, max_size=4)


@settings(max_examples=60, deadline=None)
@given(chars, st.integers(0, ARD.rank - 1))
def test_idempotent(ch, i):
    once = demazure_operator(ARD, ch, i)
    assert demazure_operator(ARD, once, i) == once


@pytest.mark.parametrize("typ,aut,rank", [("A1", "id", 2), ("A3", "order2", 3), ("D4", "order3", 3), ("A2", "order2", 2)])
def test_affine_rank_and_marks(typ, aut, rank):
    ard = build_affine_data(fold(typ, aut))
    assert ard.rank == rank
    # marks span the kernel, comarks the cokernel
    for i in range(rank):
        assert sum(ard.cartan[i][j] * ard.marks[j] for j in range(rank)) == 0
        assert sum(ard.comarks[j] * ard.cartan[j][i] for j in range(rank)) == 0


def test_braid_pairs_rank3():
    assert len(braid_pairs(build_affine_data(fold("A5", "order2")))) >= 3


@pytest.mark.parametrize("m", range(0, 5))
def test_sl2_oracle(m):
    assert graded_demazure(fold("A1", "id"), 1, [m]) == sl2_weyl_character(m)


@pytest.mark.parametrize("typ,aut,lam", [("A3", "order2", (1, 1)), ("D4", "order3", (0, 1))])
def test_grade_zero_and_invariance(typ, aut, lam):
    fa = fold(typ, aut)
    ch = graded_demazure(fa, 1, lam)
    g0 = build_root_system(str(fa.g0_label))
    top = {w: m for (w, g), m in ch.items() if g == 0}
    assert top == weyl_character(g0, lam)
    for grade in {g for _, g in ch}:
        sl = {w: m for (w, g), m in ch.items() if g == grade}
        for i in range(g0.rank):
            assert all(sl.get(reflect(g0, w, i)) == m for w, m in sl.items())


@pytest.mark.parametrize("typ,aut,lam,level", [("A3", "order2", (1, 0), 2), ("A2", "order2", (2,), 1), ("D4", "order3", (1, 0), 1)])
def test_coroot_table(typ, aut, lam, level):
    rep = coroot_evaluation_table(build_affine_data(fold(typ, aut)), level, lam, s_max=3)
    assert rep and all(r["pass"] for r in rep)


def test_rhat_values():
    a3 = build_affine_data(fold("A3", "order2"))
    assert {rhat_value(a3, b) for b in a3.folded.g0.roots if any(x > 0 for x in b)} == {1, 0.5}
    a2 = build_affine_data(fold("A2", "order2"))
    assert rhat_value(a2, (1,)) == 4


@pytest.mark.xfail(strict=True, reason="comark-normalized rhat as printed gives the wrong coroot values; see ledger")
def test_coroot_table_printed_rhat():
    rep = coroot_evaluation_table(build_affine_data(fold("A3", "order2")), 1, (1, 0), rhat=rhat_printed)
    assert all(r["pass"] for r in rep)


def test_nondominant_rejected():
    with pytest.raises(AffineError):
        graded_demazure(fold("A1", "id"), 1, [-1])
