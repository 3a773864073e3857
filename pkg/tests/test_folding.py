from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from oracles import AMBIENT_DIM, FOLD_TYPES
from twistweyl.folding import FoldingError, fold, named_automorphism, verify_commutator_table


@pytest.mark.parametrize("typ,aut", sorted(FOLD_TYPES))
def test_graded_pieces_sum_to_ambient(typ, aut):
    fa = fold(typ, aut)
    assert sum(fa.dim_eps(e) for e in range(fa.m)) == AMBIENT_DIM[typ]
    assert fa.dim_eps(0) == FOLD_TYPES[(typ, aut)][1]


@pytest.mark.parametrize("typ,aut", [("A3", "order2"), ("D4", "order3"), ("A4", "order2")])
def test_corrected_table(typ, aut):
    assert all(r["pass"] for r in verify_commutator_table(fold(typ, aut)))


def test_identity_fold_is_ambient():
    fa = fold("B2", "id")
    assert fa.m == 1 and str(fa.g0_label) == "B2" and fa.dim == 10


def test_bad_automorphism():
    with pytest.raises((FoldingError, ValueError)):
        fold("B2", "order2")
    with pytest.raises((FoldingError, ValueError)):
        named_automorphism("A3", "1,0,2")


def test_summary_keys():
    s = fold("D4", "order3").summary()
    assert s["g0_type"] == "G2" and s["m"] == 3 and s["dims"] == [14, 7, 7]


D4 = fold("D4", "order3")


def _vec(fa):
    return st.dictionaries(st.integers(0, fa.dim - 1), st.integers(-2, 2).filter(bool), max_size=3)


@settings(max_examples=40, deadline=None)
@given(_vec(D4), _vec(D4), _vec(D4))
def test_folded_jacobi(u, v, w):
    b = D4.bracket
    tot = {}
    for x in (b(u, b(v, w)), b(v, b(w, u)), b(w, b(u, v))):
        for k, c in x.items():
            tot[k] = tot.get(k, 0) + c
    assert all(c == 0 for c in tot.values())
