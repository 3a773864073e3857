"""Simple Lie algebras with a fixed Chevalley basis over the integers.

Structure constant signs come from the extraspecial-pair convention: for
every positive root xi of height >= 2 the pair (alpha, beta) with alpha
minimal in the positive-root order gets N = +(p + 1); all remaining
constants follow from the standard Chevalley relations.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Mapping, Sequence, Tuple

from .rootdata import RootSystem, Vec, build_root_system

Tag = Tuple  # ("x", root) or ("h", i)
Elem = Dict[int, Fraction]


def _add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def _neg(a: Vec) -> Vec:
    return tuple(-x for x in a)


def _is_pos(a: Vec) -> bool:
    return any(x > 0 for x in a)


class _Constants:
    """N_{alpha,beta} for arbitrary roots, built in height order."""

    def __init__(self, rs: RootSystem) -> None:
        self.rs = rs
        self.rootset = set(rs.roots)
        self.order = {r: k for k, r in enumerate(rs.positive_roots)}
        self.pos: Dict[Tuple[Vec, Vec], int] = {}
        self.extraspecial: Dict[Vec, Tuple[Vec, Vec]] = {}
        self._build()

    def p_value(self, a: Vec, b: Vec) -> int:
        p = 0
        cur = b
        while True:
            cur = tuple(x - y for x, y in zip(cur, a))
            if cur in self.rootset:
                p += 1
            else:
                return p

    def norm(self, a: Vec) -> Fraction:
        return self.rs.form_roots(a, a)

    def N(self, a: Vec, b: Vec) -> int:
        s = _add(a, b)
        if s not in self.rootset:
            return 0
        pa, pb = _is_pos(a), _is_pos(b)
        if pa and pb:
            if (a, b) in self.pos:
                return self.pos[(a, b)]
            return -self.pos[(b, a)]
        if not pa and not pb:
            return -self.N(_neg(a), _neg(b))
        if not pa:
            return -self.N(b, a)
        # a > 0 > b; c = -(a + b)
        c = _neg(s)
        if _is_pos(c):
            v = self.norm(c) / self.norm(b) * self.N(c, a)
        else:
            v = self.norm(c) / self.norm(a) * self.N(b, c)
        assert v.denominator == 1
        return int(v)

    def _build(self) -> None:
        pos = self.rs.positive_roots
        for xi in pos:
            if sum(xi) < 2:
                continue
            pairs = []
            for a in pos:
                b = tuple(x - y for x, y in zip(xi, a))
                if b in self.order and self.order[a] < self.order[b]:
                    pairs.append((a, b))
            pairs.sort(key=lambda ab: self.order[ab[0]])
            g, d = pairs[0]
            self.extraspecial[xi] = (g, d)
            self.pos[(g, d)] = self.p_value(g, d) + 1
            nxi = self.norm(xi)
            for a, b in pairs[1:]:
                tot = Fraction(0)
                bg = tuple(x - y for x, y in zip(b, g))
                if bg in self.rootset:
                    tot += Fraction(self.N(b, _neg(g)) * self.N(a, _neg(d))) / self.norm(bg)
                ag = tuple(x - y for x, y in zip(a, g))
                if ag in self.rootset:
                    tot += Fraction(self.N(_neg(g), a) * self.N(b, _neg(d))) / self.norm(ag)
                v = nxi * tot / self.pos[(g, d)]
                assert v.denominator == 1 and abs(v) == self.p_value(a, b) + 1, (a, b, v)
                self.pos[(a, b)] = int(v)


@dataclass(frozen=True, eq=False)
class ChevalleyAlgebra:
    """Chevalley basis {x_alpha (alpha in R), h_i} with an integer bracket table.

    Basis order: x_alpha for positive roots, x_{-alpha} in the same order,
    then h_1..h_n.
    """

    root_system: RootSystem

    @cached_property
    def constants(self) -> _Constants:
        return _Constants(self.root_system)

    @cached_property
    def tags(self) -> Tuple[Tag, ...]:
        rs = self.root_system
        return (
            tuple(("x", r) for r in rs.positive_roots)
            + tuple(("x", _neg(r)) for r in rs.positive_roots)
            + tuple(("h", i) for i in range(rs.rank))
        )

    @cached_property
    def index(self) -> Dict[Tag, int]:
        return {t: k for k, t in enumerate(self.tags)}

    @property
    def dim(self) -> int:
        return len(self.tags)

    def x(self, root: Sequence[int]) -> int:
        return self.index[("x", tuple(root))]

    def h(self, i: int) -> int:
        return self.index[("h", i)]

    @cached_property
    def table(self) -> Dict[Tuple[int, int], Tuple[Tuple[int, int], ...]]:
        """Nonzero brackets of basis pairs as ((index, coefficient), ...)."""
        rs = self.root_system
        C = self.constants
        out: Dict[Tuple[int, int], Tuple[Tuple[int, int], ...]] = {}
        roots = rs.roots
        for a in roots:
            ia = self.x(a)
            for i in range(rs.rank):
                k = rs.pairing(a, i)
                if k:
                    out[(self.h(i), ia)] = ((ia, k),)
                    out[(ia, self.h(i))] = ((ia, -k),)
            for b in roots:
                ib = self.x(b)
                s = _add(a, b)
                if not any(s):
                    if _is_pos(a):
                        cor = rs.coroot(a)
                        out[(ia, ib)] = tuple((self.h(i), c) for i, c in enumerate(cor) if c)
                    else:
                        cor = rs.coroot(b)
                        out[(ia, ib)] = tuple((self.h(i), -c) for i, c in enumerate(cor) if c)
                elif s in C.rootset:
                    out[(ia, ib)] = ((self.x(s), C.N(a, b)),)
        return out

    def bracket(self, u: Mapping[int, object], v: Mapping[int, object]) -> dict:
        """Bilinear extension of the table; coefficients may be any ring elements."""
        out: dict = {}
        tab = self.table
        for i, a in u.items():
            for j, b in v.items():
                for k, c in tab.get((i, j), ()):
                    val = out.get(k, 0) + a * b * c
                    out[k] = val
        return {k: c for k, c in out.items() if c != 0}

    def weight(self, idx: int) -> Vec:
        """Root (simple-root coords) of a basis element; zero for h."""
        t = self.tags[idx]
        if t[0] == "x":
            return t[1]
        return (0,) * self.root_system.rank

    def form(self, i: int, j: int) -> Fraction:
        """Normalized invariant form on basis elements, (h_theta, h_theta) = 2."""
        rs = self.root_system
        ti, tj = self.tags[i], self.tags[j]
        if ti[0] == "h" and tj[0] == "h":
            a = [int(k == ti[1]) for k in range(rs.rank)]
            b = [int(k == tj[1]) for k in range(rs.rank)]
            L = rs.root_lengths
            return 4 * rs.form_roots(a, b) / (L[ti[1]] * L[tj[1]])
        if ti[0] == "x" and tj[0] == "x" and not any(_add(ti[1], tj[1])):
            a = ti[1]
            v = 2 / rs.form_roots(a, a)
            return v if _is_pos(a) else v
        return Fraction(0)


def build_chevalley(rs: RootSystem | str) -> ChevalleyAlgebra:
    if isinstance(rs, str):
        rs = build_root_system(rs)
    return ChevalleyAlgebra(rs)


def jacobi_defects(alg: ChevalleyAlgebra, triples=None) -> List[Tuple[int, int, int]]:
    """Basis triples violating the Jacobi identity."""
    bad = []
    n = alg.dim
    it = triples if triples is not None else ((i, j, k) for i in range(n) for j in range(i + 1, n) for k in range(j + 1, n))
    for i, j, k in it:
        ei, ej, ek = {i: 1}, {j: 1}, {k: 1}
        t1 = alg.bracket(ei, alg.bracket(ej, ek))
        t2 = alg.bracket(ej, alg.bracket(ek, ei))
        t3 = alg.bracket(ek, alg.bracket(ei, ej))
        tot: dict = {}
        for t in (t1, t2, t3):
            for a, c in t.items():
                tot[a] = tot.get(a, 0) + c
        if any(c != 0 for c in tot.values()):
            bad.append((i, j, k))
    return bad
