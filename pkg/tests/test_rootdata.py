from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from twistweyl.rootdata import (
    CartanLabel,
    RootDataError,
    build_root_system,
    cartan_matrix,
    dominant_representative,
    identify_type,
    is_dominant,
    reflect,
    weyl_character,
    weyl_dimension,
    weyl_orbit,
)

TYPES = ["A1", "A2", "A3", "B2", "B3", "C2", "C3", "D4", "G2", "F4", "E6"]
DIMS = {"A1": 3, "A2": 8, "A3": 15, "B2": 10, "B3": 21, "C2": 10, "C3": 21, "D4": 28, "G2": 14, "F4": 52, "E6": 78}


@pytest.mark.parametrize("t", TYPES)
def test_dimension_and_roots(t):
    rs = build_root_system(t)
    assert rs.dim == DIMS[t]
    assert len(rs.roots) == DIMS[t] - rs.rank


@pytest.mark.parametrize("t", TYPES)
def test_identify_roundtrip(t):
    label, _ = identify_type(cartan_matrix(CartanLabel.parse(t)))
    # C2 and B2 are the same diagram
    assert str(label) == t or {str(label), t} == {"B2", "C2"}


@pytest.mark.parametrize("t", ["A1", "B2", "G2"])
def test_highest_root_is_long_and_dominant(t):
    rs = build_root_system(t)
    th = rs.highest_root
    assert rs.is_long(th)
    assert all(rs.pairing(th, i) >= 0 for i in range(rs.rank))


def test_bad_label():
    with pytest.raises((RootDataError, ValueError)):
        CartanLabel.parse("Q7")


def test_known_dimensions():
    assert weyl_dimension(build_root_system("G2"), (1, 0)) in (7, 14)
    assert weyl_dimension(build_root_system("A2"), (1, 1)) == 8
    assert weyl_dimension(build_root_system("C2"), (1, 0)) + weyl_dimension(build_root_system("C2"), (0, 1)) == 9


rank2 = st.sampled_from(["A2", "B2", "C2", "G2"])
weights = st.tuples(st.integers(-3, 3), st.integers(-3, 3))
dominant = st.tuples(st.integers(0, 2), st.integers(0, 2))


@settings(max_examples=50, deadline=None)
@given(rank2, weights, st.integers(0, 1))
def test_reflection_involution(t, w, i):
    rs = build_root_system(t)
    assert reflect(rs, reflect(rs, w, i), i) == tuple(w)


@settings(max_examples=50, deadline=None)
@given(rank2, weights)
def test_dominant_representative_in_orbit(t, w):
    rs = build_root_system(t)
    d = dominant_representative(rs, w)
    assert is_dominant(d)
    assert tuple(w) in weyl_orbit(rs, d)


@settings(max_examples=30, deadline=None)
@given(rank2, dominant)
def test_freudenthal_matches_weyl_dimension(t, lam):
    rs = build_root_system(t)
    ch = weyl_character(rs, lam)
    assert sum(ch.values()) == weyl_dimension(rs, lam)
    for mu, m in ch.items():
        for i in range(rs.rank):
            assert ch.get(reflect(rs, mu, i)) == m
