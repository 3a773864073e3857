"""Acceptance criteria, one test per criterion plus strict xfails for printed
formulas that are provably inconsistent. Each criterion prints one line."""
from __future__ import annotations

import time

import pytest

from oracles import FOLD_TYPES, sl2_weyl_character
from twistweyl.affine_demazure import (
    build_affine_data,
    check_idempotent,
    check_word_independence,
    coroot_evaluation_table,
    graded_demazure,
)
from twistweyl.envelope import (
    envelope_for,
    identity_battery,
    psi_checks,
    psi_lambda_checks,
    sample_hyperdegree_pairs,
    verify_hyperdegree,
    verify_lambda_relation,
)
from twistweyl.folding import fold, verify_commutator_table
from twistweyl.modules import (
    ModuleError,
    UnstabilizedError,
    build_weyl,
    graded_character,
    integral_lattice,
    verify_restriction,
    verify_wd,
)

NON_A2N = [k for k in FOLD_TYPES if k[0] not in ("A2", "A4")]
A2N = [("A2", "order2"), ("A4", "order2")]


def record(acc, n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    acc[n] = line
    print(line)
    assert ok, line


def failures(report):
    return [r for r in report if not r["pass"]]


# -- 1. folding -------------------------------------------------------------------

def test_criterion_1_folding(acceptance):
    t = time.perf_counter()
    bad = []
    for (typ, aut), (g0, dim0) in FOLD_TYPES.items():
        fa = fold(typ, aut)
        if str(fa.g0_label) != g0 or fa.dim_eps(0) != dim0:
            bad.append(f"{typ}/{aut}: got {fa.g0_label}")
        if failures(verify_commutator_table(fa)):
            bad.append(f"{typ}/{aut}: table mismatch")
        if (typ, aut) in NON_A2N and fa.nonintegral_entries:
            bad.append(f"{typ}/{aut}: nonintegral")
        if (typ, aut) in NON_A2N and failures(verify_commutator_table(fa, literal=True)):
            bad.append(f"{typ}/{aut}: literal table mismatch")
    dt = time.perf_counter() - t
    if dt >= 10:
        bad.append(f"runtime {dt:.1f}s")
    record(acceptance, 1, not bad,
           f"six foldings, types and table ok in {dt:.1f}s; literal A2/A4 entries are strict xfails" if not bad else "; ".join(bad))


@pytest.mark.xfail(strict=True, reason="printed A2n table contradicts the bracket; see ledger")
@pytest.mark.parametrize("typ,aut", A2N)
def test_criterion_1_literal_table_a2n(typ, aut):
    assert not failures(verify_commutator_table(fold(typ, aut), literal=True))


@pytest.mark.xfail(strict=True, reason="A2n folded basis needs 1/2 and sqrt 2; see ledger")
@pytest.mark.parametrize("typ,aut", A2N)
def test_criterion_1_integrality_a2n(typ, aut):
    assert not fold(typ, aut).nonintegral_entries


# -- 2. identity battery ----------------------------------------------------------

def test_criterion_2_identities(acceptance):
    t = time.perf_counter()
    bad, n = [], 0
    for typ, aut in [("A1", "id"), ("A3", "order2"), ("A2", "order2")]:
        rep = identity_battery(fold(typ, aut))
        n += len(rep)
        bad += [f"{typ}: {r['check']} {r['detail']}" for r in failures(rep)]
    env = envelope_for(fold("A3", "order2"), 6)
    pairs = sample_hyperdegree_pairs(env, 50)
    hyp = verify_hyperdegree(env, pairs)
    bad += [r["detail"] for r in failures(hyp)] + ([] if len(hyp) >= 50 else ["too few hyperdegree pairs"])
    orbit_sizes = set()
    for typ, aut in [("A3", "order2"), ("D4", "order3"), ("A2", "order2")]:
        fa = fold(typ, aut)
        for mu in fa.R_eps(0):
            orbit_sizes.add(fa.orbit_size(fa.rep_root(mu)) == fa.m)
            bad += [f"{typ} tLvsL {r['detail']}" for r in failures(verify_lambda_relation(fa, mu, 4, literal=False))]
    if orbit_sizes != {True, False}:
        bad.append("tLvsL did not see both orbit sizes")
    dt = time.perf_counter() - t
    if dt >= 120:
        bad.append(f"runtime {dt:.1f}s")
    record(acceptance, 2, not bad,
           f"{n} identity instances, {len(hyp)} hyperdegree pairs, tLvsL to u^4 in {dt:.1f}s; literal forms that fail are strict xfails"
           if not bad else "; ".join(bad[:5]))


def test_criterion_2_cases_covered():
    from twistweyl.envelope import garland_cases
    seen = set()
    for typ, aut in [("A1", "id"), ("A3", "order2"), ("A2", "order2")]:
        seen |= set(garland_cases(fold(typ, aut)))
    assert seen == {"untwisted", "a", "b", "c-i", "c-ii", "c-iii"}


@pytest.mark.parametrize("typ,aut,case", [("A3", "order2", "a"), ("A3", "order2", "b"), ("A2", "order2", "c-ii"), ("D4", "order3", "a")])
def test_criterion_2_literal_forms_that_hold(typ, aut, case):
    assert not failures(identity_battery(fold(typ, aut), [case], literal=True))


@pytest.mark.xfail(strict=True, reason="printed form drops a term; see ledger")
@pytest.mark.parametrize("typ,aut,case", [("A1", "id", "untwisted"), ("A2", "order2", "c-i"), ("A2", "order2", "c-iii")])
def test_criterion_2_literal_forms_xfail(typ, aut, case):
    assert not failures(identity_battery(fold(typ, aut), [case], literal=True))


@pytest.mark.xfail(strict=True, reason="printed A2n short-root series exponent is off; see ledger")
def test_criterion_2_literal_tLvsL_a2n():
    fa = fold("A2", "order2")
    assert not failures(verify_lambda_relation(fa, fa.R_eps(0)[0], 4, literal=True))


# -- 3. psi -----------------------------------------------------------------------

def test_criterion_3_psi(acceptance):
    fa = fold("A3", "order2")
    rep = psi_checks(fa, samples=100)
    lam = psi_lambda_checks(fa, 3)
    r1 = [r for r in lam if r["detail"].endswith("r=1")]
    inverse = [r for r in lam if r["check"] == "psi-Lambda-inverse"]
    ok = not failures(rep) and r1 and not failures(r1) and inverse and not failures(inverse)
    record(acceptance, 3, bool(ok),
           "involution and multiplicativity on 100 samples; psi(Lambda_1) = -Lambda_1; r=2,3 as printed are strict xfails")


@pytest.mark.xfail(strict=True, reason="psi(Lambda_r) = -Lambda_r fails for r >= 2; psi inverts the series instead; see ledger")
@pytest.mark.parametrize("r", [2, 3])
def test_criterion_3_psi_lambda_printed(r):
    lam = psi_lambda_checks(fold("A3", "order2"), 3)
    assert not failures([x for x in lam if x["detail"].endswith(f"r={r}")])


# -- 4. untwisted sanity ----------------------------------------------------------

def test_criterion_4_sl2(acceptance):
    fa = fold("A1", "id")
    bad = []
    for m in range(1, 5):
        mod = build_weyl(fa, [m])
        ch = graded_character(mod)
        if mod.dim != 2 ** m or ch != graded_demazure(fa, 1, [m]) or ch != sl2_weyl_character(m):
            bad.append(f"m={m}: dim {mod.dim}")
    record(acceptance, 4, not bad, "dims 2,4,8,16 and characters equal the Demazure and q-binomial oracles" if not bad else "; ".join(bad))


# -- 5. Weyl = Demazure -----------------------------------------------------------

def test_criterion_5_weyl_equals_demazure(acceptance):
    t = time.perf_counter()
    bad = []
    for typ, aut, lam in [("A3", "order2", [1, 0]), ("A3", "order2", [0, 1]), ("A3", "order2", [1, 1]), ("D4", "order3", [1, 0])]:
        bad += [f"{typ} {lam}: {r['check']}" for r in failures(verify_wd(fold(typ, aut), lam))]
    dt = time.perf_counter() - t
    if dt >= 600:
        bad.append(f"runtime {dt:.1f}s")
    record(acceptance, 5, not bad, f"A3 w1, w2, w1+w2 and D4 w1: Weyl, Demazure and oracle agree in {dt:.1f}s" if not bad else "; ".join(bad))


# -- 6. restriction ---------------------------------------------------------------

def test_criterion_6_restriction(acceptance):
    bad = []
    for typ, lam in [("A3", [1, 0]), ("A2", [2])]:
        bad += [f"{typ} {lam}: {r['check']}" for r in failures(verify_restriction(fold(typ, "order2"), lam))]
    record(acceptance, 6, not bad,
           "A3 w1 and A2 (lambda=2) restrictions are cyclic with a bijective intertwiner; A2 lambda=1 is a strict xfail"
           if not bad else "; ".join(bad))


@pytest.mark.xfail(strict=True, raises=ModuleError, reason="the A2 fundamental weight is not the restriction of an ambient dominant weight; see ledger")
def test_criterion_6_a2_fundamental():
    assert not failures(verify_restriction(fold("A2", "order2"), [1]))


# -- 7. Demazure operators --------------------------------------------------------

def test_criterion_7_demazure_operators(acceptance):
    ard = build_affine_data(fold("A3", "order2"))
    idem = check_idempotent(ard, trials=20)
    words = check_word_independence(ard, ((1, 1, 1), 0))
    table = []
    for typ, aut, lam in [("A1", "id", (1,)), ("A3", "order2", (1, 0)), ("D4", "order3", (1, 0)), ("A2", "order2", (2,))]:
        table += coroot_evaluation_table(build_affine_data(fold(typ, aut)), 1, lam, s_max=3)
    ok = len(idem) == 20 and len(words) >= 3 and table and not failures(idem + words + table)
    record(acceptance, 7, bool(ok), f"20 idempotence trials, {len(words)} word pairs, {len(table)} coroot evaluations for s <= 3")


# -- 8. lattice -------------------------------------------------------------------

def test_criterion_8_lattice(acceptance):
    bad, divs = [], []
    for typ, aut, lam in [("A1", "id", [2]), ("A3", "order2", [1, 0])]:
        lat = integral_lattice(build_weyl(fold(typ, aut), lam))
        divs.append(f"{typ}: {lat.divisors}")
        if lat.rank != lat.dim:
            bad.append(f"{typ}: rank {lat.rank} != dim {lat.dim}")
    try:
        integral_lattice(build_weyl(fold("A2", "order2"), [1]), p=2)
        bad.append("p=2 accepted for A2")
    except ModuleError as e:
        if "p = 2" not in str(e):
            bad.append(f"wrong error: {e}")
    record(acceptance, 8, not bad, f"rank = dim; divisors {'; '.join(divs)}; p=2 refused for A2" if not bad else "; ".join(bad))


# -- 9. certification -------------------------------------------------------------

def test_criterion_9_undersized_bound(acceptance):
    with pytest.raises(UnstabilizedError) as info:
        build_weyl(fold("A3", "order2"), [1, 1], bound=1, max_increments=0)
    record(acceptance, 9, True, f"undersized bound raised UnstabilizedError: {info.value}")
