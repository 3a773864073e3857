from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from twistweyl.envelope import (
    envelope_for,
    UElement,
    in_U_plus,
    identity_battery,
    psi_apply,
    random_element,
    sample_hyperdegree_pairs,
    verify_hyperdegree,
    verify_lambda_relation,
)
from twistweyl.folding import fold

ENV = envelope_for(fold("A3", "order2"), 4)
seeds = st.integers(0, 10 ** 6)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_associativity(seed):
    rng = random.Random(seed)
    a, b, c = (random_element(ENV, rng, terms=2, length=2) for _ in range(3))
    assert (a * b) * c == a * (b * c)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_distributive_and_unit(seed):
    rng = random.Random(seed)
    a, b, c = (random_element(ENV, rng, terms=2, length=2) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert ENV.one() * a == a == a * ENV.one()


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_psi_antipode_properties(seed):
    rng = random.Random(seed)
    a, b = random_element(ENV, rng), random_element(ENV, rng, terms=2, length=2)
    assert psi_apply(psi_apply(a)) == a
    assert psi_apply(a * b) == psi_apply(a) * psi_apply(b)


def test_u_plus_membership():
    assert not in_U_plus(ENV.one())
    assert in_U_plus(ENV.zero())
    plus = [g for g in range(len(ENV.gen)) if ENV.kind[g] == "x+"]
    assert in_U_plus(UElement(ENV, {(plus[0],): 1}))


@pytest.mark.parametrize("typ,aut", [("A1", "id"), ("A3", "order2"), ("A4", "order2"), ("D4", "order3")])
def test_corrected_battery(typ, aut):
    rep = identity_battery(fold(typ, aut))
    assert rep and all(r["pass"] for r in rep)


def test_hyperdegree_drop():
    env = envelope_for(fold("D4", "order3"), 6)
    rep = verify_hyperdegree(env, sample_hyperdegree_pairs(env, 30, seed=3))
    assert len(rep) == 30 and all(r["pass"] for r in rep)


def test_lambda_relation_a4():
    fa = fold("A4", "order2")
    for mu in fa.R_eps(0):
        assert all(r["pass"] for r in verify_lambda_relation(fa, mu, 3, literal=False))
