"""Local graded Weyl modules and Demazure modules as explicit finite-dimensional quotients.

The universal module M = U(g[t]^sigma) (x) C_lambda (induced from n+[t]^sigma
and h[t]^sigma acting by lambda at t-degree 0 and by 0 above) has the PBW basis
u v with u an ordered monomial in the lowering generators.  A cyclic module is
M / N with N generated by relation vectors.  It is computed on the window S of
(weight, grade) blocks with weight in wt V(lambda) and grade <= B:

    N cap M_S = smallest X in M_S containing the relation vectors and the images
    of the adjacent out-of-window blocks, and closed under a Lie generating set Y.

This is exact for every B because weights outside wt V(lambda) vanish in the
quotient and grades never decrease.  B is raised until the top grades are
empty, after which the degree-one generation of g[t]^sigma forces all higher
grades to vanish too.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .affine_demazure import (
    AffineError,
    build_affine_data,
    graded_demazure,
    lambda_on_coroot,
    rhat_value,
)
from .current import CurrentBasisElement, TruncatedCurrentAlgebra
from .envelope import Envelope, Monomial, envelope_for
from .folding import FoldedAlgebra, fold
from .linalg import Echelon, elementary_divisors
from .rootdata import weights_of_irrep, weyl_orbit
from .scalars import SQRT2, Scalar2, _Quadratic

Block = Tuple[Tuple[int, ...], int]  # (beta = lambda - weight in root coordinates, grade)
GradedCharacter = Dict[Tuple[Tuple[int, ...], int], int]
SparseMatrix = Dict[int, Dict[int, Fraction]]  # column -> {row: coefficient}


class ModuleError(ValueError):
    """Invalid input (usage error)."""


class UnstabilizedError(RuntimeError):
    """The saturation bound never stabilized or certification failed."""


# -- the induced module ---------------------------------------------------------

class _Induced:
    """Action of U(g[t]^sigma / t^D) on the PBW basis of the induced module."""

    def __init__(self, env: Envelope, lam: Sequence[int]):
        self.env = env
        self.lam = tuple(lam)
        tca = env.tca
        self.hval: Dict[int, int] = {}
        for p, g in enumerate(env.gen):
            if env.kind[p] == "h" and env.tdeg[p] == 0:
                self.hval[p] = self.lam[tca.basis[g].label]
        self.beta = tuple(tuple(-x for x in tca.weight(g)) for g in env.gen)
        self._cache: Dict[Tuple[int, Monomial], Dict[Monomial, object]] = {}

    def act(self, y: int, mono: Monomial) -> Dict[Monomial, object]:
        env = self.env
        if env.kind[y] == "x-" and (not mono or y <= mono[0]):
            return {(y,) + mono: 1}
        if not mono:
            val = self.hval.get(y, 0)
            return {(): val} if val else {}
        key = (y, mono)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        g1, rest = mono[0], mono[1:]
        out: Dict[Monomial, object] = {}
        # y g1 rest = g1 (y rest) + [y, g1] rest
        for w, c in self.act(y, rest).items():
            for w2, c2 in self.act(g1, w).items():
                out[w2] = out.get(w2, 0) + c * c2
        for k, ck in env._bracket.get((y, g1), ()):
            for w, c in self.act(k, rest).items():
                out[w] = out.get(w, 0) + ck * c
        out = {w: c for w, c in out.items() if c != 0}
        self._cache[key] = out
        return out

    def act_vec(self, y: int, vec: Dict[Monomial, object]) -> Dict[Monomial, object]:
        out: Dict[Monomial, object] = {}
        for mono, c in vec.items():
            for w, c2 in self.act(y, mono).items():
                out[w] = out.get(w, 0) + c * c2
        return {w: c for w, c in out.items() if c != 0}

    def block(self, mono: Monomial) -> Block:
        n = len(self.lam)
        b = [0] * n
        for p in mono:
            for i, x in enumerate(self.beta[p]):
                b[i] += x
        return tuple(b), sum(self.env.tdeg[p] for p in mono)


def _monomials(ind: _Induced, cap: Sequence[int], bound: int) -> Dict[Block, List[Monomial]]:
    """All lowering monomials with beta <= cap componentwise and grade <= bound."""
    env = ind.env
    gens = [p for p in range(len(env.gen)) if env.kind[p] == "x-" and env.tdeg[p] <= bound]
    n = len(cap)
    out: Dict[Block, List[Monomial]] = {}

    def rec(start: int, mono: Tuple[int, ...], beta: List[int], g: int) -> None:
        out.setdefault((tuple(beta), g), []).append(mono)
        for k in range(start, len(gens)):
            p = gens[k]
            b = ind.beta[p]
            g2 = g + env.tdeg[p]
            if g2 > bound:
                continue
            nb = [beta[i] + b[i] for i in range(n)]
            if any(nb[i] > cap[i] for i in range(n)):
                continue
            rec(k, mono + (p,), nb, g2)

    rec(0, (), [0] * n, 0)
    return out


# -- module record --------------------------------------------------------------

@dataclass
class CyclicModule:
    algebra: TruncatedCurrentAlgebra
    lam: Tuple[int, ...]
    kind: str  # "weyl", "demazure", "restricted", "top"
    level: Optional[int]
    bound: int
    tags: List[Tuple[Tuple[int, ...], int]]  # (g0 weight in fundamental coordinates, grade)
    cyclic: int
    action: Dict[CurrentBasisElement, SparseMatrix]
    monomials: List[Monomial] = field(default_factory=list)
    report: List[dict] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.tags)

    @property
    def folded(self) -> FoldedAlgebra:
        return self.algebra.folded

    def apply(self, elem: CurrentBasisElement, vec: Dict[int, object]) -> Dict[int, Fraction]:
        mat = self.action.get(elem, {})
        out: Dict[int, Fraction] = {}
        for j, c in vec.items():
            for i, x in mat.get(j, {}).items():
                out[i] = out.get(i, 0) + c * x
        return {i: c for i, c in out.items() if c != 0}

    def presentation(self) -> dict:
        return {"lambda": list(self.lam), "kind": self.kind, "level": self.level, "bound": self.bound}


# -- relation families ----------------------------------------------------------

def _demazure_relations(fa: FoldedAlgebra, lam: Sequence[int], level: int, bound: int) -> List[Tuple[Tuple[int, ...], int, int]]:
    """(alpha, s, k): (x-_alpha (x) t^s)^k v = 0 for s >= 1, k = 1 + max(0, lambda(h_alpha) - rhat_alpha level s)."""
    ard = build_affine_data(fa)
    out = []
    for s in range(1, bound + 1):
        eps = (-s) % fa.m
        for alpha in fa.R_eps(eps):
            if not any(x > 0 for x in alpha):
                continue
            b = lambda_on_coroot(fa.g0, lam, alpha) - rhat_value(ard, alpha) * level * s
            k = math.floor(max(Fraction(0), b)) + 1
            out.append((tuple(alpha), s, k))
    return out


def _check_lambda(fa: FoldedAlgebra, lam: Sequence[int]) -> Tuple[int, ...]:
    lam = tuple(int(x) for x in lam)
    if len(lam) != fa.g0.rank:
        raise ModuleError(f"lambda needs {fa.g0.rank} coordinates for g0 = {fa.g0_label}, got {len(lam)}")
    if any(x < 0 for x in lam):
        raise ModuleError(f"lambda {list(lam)} is not dominant")
    return lam


def _height(lam: Sequence[int]) -> int:
    return sum(lam)


# -- construction ---------------------------------------------------------------

def _window(fa: FoldedAlgebra, lam: Sequence[int]) -> set:
    g0 = fa.g0
    out = set()
    for nu in weights_of_irrep(g0, lam):
        b = g0.weight_to_roots([a - x for a, x in zip(lam, nu)])
        out.add(tuple(int(x) for x in b))
    return out


def _quotient(fa: FoldedAlgebra, lam: Tuple[int, ...], bound: int, relations: List[Tuple[Tuple[int, ...], int, int]]):
    """N cap M_S on the window of grades <= bound; returns (induced, blocks, echelons)."""
    env = envelope_for(fa, bound + 1)
    ind = _Induced(env, lam)
    tca = env.tca
    allowed = _window(fa, lam)
    n = fa.g0.rank
    roots = [r for r in fa.g0.roots if any(x > 0 for x in r)]
    cap = [max(b[i] for b in allowed) + max(r[i] for r in roots) for i in range(n)]
    blocks = _monomials(ind, cap, bound)

    # Lie generating set: simple root vectors at t^0 and everything at t^1
    Y = []
    for p, g in enumerate(env.gen):
        b = tca.basis[g]
        if b.tdeg == 1:
            Y.append(p)
        elif b.tdeg == 0 and b.kind in ("x+", "x-") and sum(abs(x) for x in b.label) == 1:
            Y.append(p)
    shift = {y: ind.beta[y] for y in Y}

    def target(blk: Block, y: int) -> Optional[Block]:
        beta, g = blk
        g2 = g + env.tdeg[y]
        if g2 > bound:
            return None
        b2 = tuple(x + d for x, d in zip(beta, shift[y]))
        return (b2, g2) if b2 in allowed else None

    ech: Dict[Block, Echelon] = {blk: Echelon() for blk in blocks if blk[0] in allowed}
    queue: List[Tuple[Block, Dict[Monomial, Fraction]]] = []

    def push(blk: Block, vec: Dict[Monomial, object]) -> None:
        if not vec:
            return
        row = ech[blk].add(vec)
        if row is not None:
            queue.append((blk, row))

    for alpha, s, k in relations:
        i = tca.element("x-", tuple(alpha), s)
        if i is None:
            raise AssertionError(f"relation generator x-_{list(alpha)} t^{s} missing from the truncation")
        p = env.pos[i]
        mono = (p,) * k
        blk = ind.block(mono)
        if blk in ech:
            push(blk, {mono: 1})
    for blk, monos in blocks.items():
        if blk[0] in allowed:
            continue
        for y in Y:
            t = target(blk, y)
            if t is None:
                continue
            for mono in monos:
                push(t, ind.act(y, mono))
    while queue:
        blk, vec = queue.pop()
        for y in Y:
            t = target(blk, y)
            if t is not None:
                push(t, ind.act_vec(y, vec))
    return ind, blocks, ech, allowed


def _assemble(fa, lam, kind, level, bound, ind, blocks, ech, allowed) -> CyclicModule:
    env = ind.env
    tca = env.tca
    g0 = fa.g0
    order = sorted(ech, key=lambda blk: (blk[1], sum(blk[0]), blk[0]))
    tags, monos = [], []
    where: Dict[Monomial, int] = {}
    for blk in order:
        beta, g = blk
        wt = tuple(a - x for a, x in zip(lam, g0.root_to_weight(beta)))
        for mono in sorted(blocks[blk]):
            if mono in ech[blk].rows:
                continue
            where[mono] = len(monos)
            monos.append(mono)
            tags.append((wt, g))
    action: Dict[CurrentBasisElement, SparseMatrix] = {}
    for p, gi in enumerate(env.gen):
        elem = tca.basis[gi]
        mat: SparseMatrix = {}
        for j, mono in enumerate(monos):
            img = ind.act(p, mono)
            if not img:
                continue
            blk = ind.block(next(iter(img)))
            if blk not in ech:
                continue
            red = ech[blk].reduce(img)
            col = {where[w]: c for w, c in red.items()}
            if col:
                mat[j] = col
        action[elem] = mat
    return CyclicModule(tca, tuple(lam), kind, level, bound, tags, where.get((), 0), action, monos)


def _grades(mod: CyclicModule) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for _, g in mod.tags:
        out[g] = out.get(g, 0) + 1
    return out


def _build(fa: FoldedAlgebra, lam: Sequence[int], kind: str, level: Optional[int], bound: Optional[int], max_increments: int, certify: bool) -> CyclicModule:
    lam = _check_lambda(fa, lam)
    B = _height(lam) + 2 if bound is None else bound
    for step in range(max_increments + 1):
        rels = [(tuple(int(j == i) for j in range(fa.g0.rank)), 0, lam[i] + 1) for i in range(fa.g0.rank)]
        if kind == "demazure":
            rels += _demazure_relations(fa, lam, level, B)
        parts = _quotient(fa, lam, B, rels)
        mod = _assemble(fa, lam, kind, level, B, *parts)
        gr = _grades(mod)
        if not any(gr.get(g, 0) for g in range(max(B - 2, 0) + 1, B + 1)):
            if certify:
                rep = certify_module(mod, rels)
                mod.report = rep
                if not all(r["pass"] for r in rep):
                    bad = [r["detail"] for r in rep if not r["pass"]][:3]
                    raise UnstabilizedError(f"certification failed at bound {B}: {bad}")
            return mod
        B += 2
    raise UnstabilizedError(
        f"unstabilized: graded dimension still growing at saturation bound {B - 2} "
        f"after {max_increments} increments (grades {dict(sorted(gr.items()))})"
    )


def build_weyl(fa: FoldedAlgebra, lam: Sequence[int], bound: Optional[int] = None, max_increments: int = 5, certify: bool = True) -> CyclicModule:
    """The local graded Weyl module with highest weight lam."""
    return _build(fa, lam, "weyl", None, bound, max_increments, certify)


def build_demazure(fa: FoldedAlgebra, level: int, lam: Sequence[int], bound: Optional[int] = None, max_increments: int = 5, certify: bool = True) -> CyclicModule:
    """The Demazure module of the given level: the Weyl module modulo the graded level relations."""
    if level < 1:
        raise ModuleError("level must be >= 1")
    return _build(fa, lam, "demazure", level, bound, max_increments, certify)


# -- certification --------------------------------------------------------------

def _matmul_col(mod: CyclicModule, a: CurrentBasisElement, col: Dict[int, Fraction]) -> Dict[int, Fraction]:
    return mod.apply(a, col)


def certify_module(mod: CyclicModule, relations: Sequence[Tuple[Tuple[int, ...], int, int]] = ()) -> List[dict]:
    rep = []
    tca = mod.algebra
    gens = [b for b in tca.basis if b.tdeg <= 1]
    # bracket compatibility on a Lie generating range
    bad = 0
    for a in gens:
        for b in gens:
            ab = tca.bracket({tca.index[a]: 1}, {tca.index[b]: 1})
            for j in range(mod.dim):
                e = {j: Fraction(1)}
                lhs: Dict[int, Fraction] = {}
                for k, c in ab.items():
                    for i, x in mod.apply(tca.basis[k], e).items():
                        lhs[i] = lhs.get(i, 0) + c * x
                rhs = dict(mod.apply(a, mod.apply(b, e)))
                for i, x in mod.apply(b, mod.apply(a, e)).items():
                    rhs[i] = rhs.get(i, 0) - x
                if {i: c for i, c in lhs.items() if c} != {i: c for i, c in rhs.items() if c}:
                    bad += 1
    rep.append({"check": "bracket-compatibility", "pass": bad == 0, "detail": f"{bad} failing (pair, vector) instances"})
    # grade/weight compatibility
    bad = 0
    for elem, mat in mod.action.items():
        w = mod.folded.weight(tca.folded_index[tca.index[elem]])
        wf = mod.folded.g0.root_to_weight(w)
        for j, col in mat.items():
            for i in col:
                (wj, gj), (wi, gi) = mod.tags[j], mod.tags[i]
                if gi != gj + elem.tdeg or tuple(a + b for a, b in zip(wj, wf)) != wi:
                    bad += 1
    rep.append({"check": "grading", "pass": bad == 0, "detail": f"{bad} misplaced entries"})
    # relations at v
    v = {mod.cyclic: Fraction(1)}
    bad = 0
    for alpha, s, k in relations:
        elem = CurrentBasisElement("x-", tuple(alpha), s)
        if elem not in mod.action:
            bad += 1
            continue
        u = dict(v)
        for _ in range(k):
            u = mod.apply(elem, u)
        if u:
            bad += 1
    for elem in mod.action:
        if elem.kind == "x+" or (elem.kind == "h" and elem.tdeg > 0):
            if mod.apply(elem, v):
                bad += 1
        elif elem.kind == "h":
            if mod.apply(elem, v) != ({mod.cyclic: Fraction(mod.lam[elem.label])} if mod.lam[elem.label] else {}):
                bad += 1
    rep.append({"check": "relations-at-v", "pass": bad == 0, "detail": f"{bad} relations not annihilating v"})
    top = [i for i, (w, g) in enumerate(mod.tags) if g == 0 and w == mod.lam]
    rep.append({"check": "highest-weight-line", "pass": top == [mod.cyclic], "detail": f"(lambda,0) basis {top}"})
    reach = cyclic_span_dim(mod, v)
    rep.append({"check": "cyclic", "pass": reach == mod.dim, "detail": f"span of U.v has dim {reach} of {mod.dim}"})
    return rep


def cyclic_span_dim(mod: CyclicModule, v: Dict[int, object], elems: Optional[Iterable[CurrentBasisElement]] = None) -> int:
    elems = list(elems if elems is not None else mod.action)
    ech: Echelon = Echelon()
    queue = []
    r = ech.add(v)
    if r is not None:
        queue.append(r)
    while queue:
        u = queue.pop()
        for e in elems:
            r = ech.add(mod.apply(e, u))
            if r is not None:
                queue.append(r)
    return len(ech)


# -- characters and derived modules ---------------------------------------------

def graded_character(mod: CyclicModule) -> GradedCharacter:
    out: GradedCharacter = {}
    for t in mod.tags:
        out[t] = out.get(t, 0) + 1
    return out


def character_is_weyl_invariant(fa: FoldedAlgebra, ch: GradedCharacter) -> bool:
    g0 = fa.g0
    for (w, g), mult in ch.items():
        for w2 in weyl_orbit(g0, w):
            if ch.get((tuple(w2), g), 0) != mult:
                return False
    return True


def _mono_image(mod: CyclicModule, target: CyclicModule, j: int) -> Dict[int, object]:
    """Image in `target` of the monomial representing basis vector j of `mod`."""
    env = envelope_for(mod.folded, mod.bound + 1)
    tca = env.tca
    u: Dict[int, object] = {target.cyclic: Fraction(1)}
    for p in reversed(mod.monomials[j]):
        u = target.apply(tca.basis[env.gen[p]], u)
    return u


def intertwiner(source: CyclicModule, target: CyclicModule) -> Tuple[Dict[int, Dict[int, object]], List[dict]]:
    """The module map source -> target sending v to v, checked on a Lie generating set.

    Returns the matrix (column j = image of basis vector j) and a report with
    the intertwining and rank checks.
    """
    cols = {j: _mono_image(source, target, j) for j in range(source.dim)}
    tca = source.algebra
    bad = 0
    for elem in tca.basis:
        if elem.tdeg > 1:
            continue
        for j in range(source.dim):
            lhs: Dict[int, object] = {}
            for i, c in source.apply(elem, {j: Fraction(1)}).items():
                for k, x in cols[i].items():
                    lhs[k] = lhs.get(k, 0) + c * x
            rhs = target.apply(elem, cols[j])
            if {k: c for k, c in lhs.items() if c != 0} != rhs:
                bad += 1
    ech: Echelon = Echelon()
    for col in cols.values():
        ech.add(col)
    r = len(ech)
    rep = [
        {"check": "intertwines", "pass": bad == 0, "detail": f"{bad} failing (generator, vector) instances"},
        {"check": "surjective", "pass": r == target.dim, "detail": f"rank {r}, target dim {target.dim}"},
    ]
    return cols, rep


def simple_top(mod: CyclicModule) -> CyclicModule:
    """Quotient by the maximal proper submodule.

    The maximal proper submodule is the annihilator of the functionals
    f o rho(u), where f reads the coefficient of v; these are computed by
    closing {f} under the transposed action.
    """
    elems = list(mod.action)
    # transposed action: row vector f -> f o rho(y)
    tr: Dict[CurrentBasisElement, Dict[int, Dict[int, Fraction]]] = {}
    for e in elems:
        t: Dict[int, Dict[int, Fraction]] = {}
        for j, col in mod.action[e].items():
            for i, x in col.items():
                t.setdefault(i, {})[j] = x
        tr[e] = t

    def pull(e, f):
        out: Dict[int, Fraction] = {}
        for i, c in f.items():
            for j, x in tr[e].get(i, {}).items():
                out[j] = out.get(j, 0) + c * x
        return {j: c for j, c in out.items() if c != 0}

    ech: Echelon = Echelon()
    queue = [ech.add({mod.cyclic: Fraction(1)})]
    while queue:
        f = queue.pop()
        for e in elems:
            r = ech.add(pull(e, f))
            if r is not None:
                queue.append(r)
    rows = ech.reduced_rows()  # pivot column -> functional with coefficient 1 there
    pivots = sorted(rows, key=lambda j: j)
    new = {j: k for k, j in enumerate(pivots)}
    action: Dict[CurrentBasisElement, SparseMatrix] = {}
    for e in elems:
        mat: SparseMatrix = {}
        for j in pivots:
            img = mod.apply(e, {j: Fraction(1)})
            col = {}
            for p in pivots:
                c = sum((rows[p].get(i, 0) * x for i, x in img.items()), Fraction(0))
                if c:
                    col[new[p]] = c
            if col:
                mat[new[j]] = col
        action[e] = mat
    return CyclicModule(
        mod.algebra, mod.lam, "top", mod.level, mod.bound,
        [mod.tags[j] for j in pivots], new[mod.cyclic], action,
        [mod.monomials[j] for j in pivots] if mod.monomials else [],
    )


# -- restriction from the untwisted current algebra ----------------------------------

def _ambient_weight(fa: FoldedAlgebra, lam: Sequence[int]) -> Tuple[int, ...]:
    """An ambient dominant weight restricting to lam, supported on the least node of each orbit."""
    n = fa.ambient.root_system.rank
    out = [0] * n
    h_index = {t.label: k for k, t in enumerate(fa.tags) if t.kind == "h" and t.eps == 0}
    for i, x in enumerate(lam):
        vec = fa.vectors[h_index[i]]
        coef = {}
        for idx, c in vec.items():
            kind, node = fa.ambient.tags[idx]
            coef[node] = Fraction(c.to_fraction() if hasattr(c, "to_fraction") else c)
        node = min(coef)
        val = Fraction(x) / coef[node]
        if val.denominator != 1:
            raise ModuleError(
                f"lambda {list(lam)} is not the restriction of an ambient dominant weight: "
                f"h_{i},0 = {dict(sorted(coef.items()))} on ambient coroots"
            )
        out[node] = int(val)
    return tuple(out)


def _restricted_weight(fa: FoldedAlgebra, wt: Sequence[int]) -> Tuple[int, ...]:
    out = []
    h_index = {t.label: k for k, t in enumerate(fa.tags) if t.kind == "h" and t.eps == 0}
    for i in range(fa.g0.rank):
        tot = Fraction(0)
        for idx, c in fa.vectors[h_index[i]].items():
            _, node = fa.ambient.tags[idx]
            tot += Fraction(c.to_fraction() if hasattr(c, "to_fraction") else c) * wt[node]
        out.append(int(tot))
    return tuple(out)


def restrict_untwisted(fa: FoldedAlgebra, lam: Sequence[int], max_increments: int = 5, shift: int = 0) -> CyclicModule:
    """The untwisted Weyl module of the ambient algebra regarded as a g[t]^sigma-module.

    With shift = a != 0 the untwisted module is first pulled back along
    t -> t + a, so x (x) t^r acts as sum_j binom(r, j) a^(r-j) x (x) t^j; the
    result is then only filtered, and its grade tags are those of the
    untwisted module.
    """
    lam = _check_lambda(fa, lam)
    lam_amb = _ambient_weight(fa, lam)
    fid = fold(fa.ambient, "id")
    up = build_weyl(fid, lam_amb, max_increments=max_increments)
    # ambient Chevalley index -> untwisted folded tag
    amb_tag = {}
    for k, vec in enumerate(fid.vectors):
        (idx, _), = vec.items()
        amb_tag[idx] = fid.tags[k]
    tca = envelope_for(fa, up.bound + 1).tca
    # sqrt2 normalization for A_{2n}: rescale basis vector j by sqrt2^{-k_j}
    parity = [0] * fa.g0.rank
    if fa.is_A2n:
        for i in range(fa.g0.rank):
            k = tca.folded_index[tca.element("x-", tuple(int(j == i) for j in range(fa.g0.rank)), 0)]
            parity[i] = int(any(getattr(c, "b", 0) != 0 for c in fa.vectors[k].values()))
    tags = []
    kexp = []
    for wt, g in up.tags:
        w0 = _restricted_weight(fa, wt)
        tags.append((w0, g))
        beta = fa.g0.weight_to_roots([a - b for a, b in zip(lam, w0)])
        kexp.append(sum(int(b) * p for b, p in zip(beta, parity)))
    action: Dict[CurrentBasisElement, SparseMatrix] = {}
    for ti, elem in enumerate(tca.basis):
        vec = fa.vectors[tca.folded_index[ti]]
        mat: Dict[int, Dict[int, object]] = {}
        terms = [(elem.tdeg, 1)] if not shift else [(j, math.comb(elem.tdeg, j) * shift ** (elem.tdeg - j)) for j in range(elem.tdeg + 1)]
        for idx, c in vec.items():
            t = amb_tag[idx]
            for deg, b in terms:
                ue = CurrentBasisElement(t.kind, t.label, deg)
                for j, col in up.action.get(ue, {}).items():
                    dst = mat.setdefault(j, {})
                    for i, x in col.items():
                        dst[i] = dst.get(i, 0) + b * c * x
        clean: SparseMatrix = {}
        for j, col in mat.items():
            out = {}
            for i, x in col.items():
                d = kexp[j] - kexp[i]
                if d:
                    x = _sqrt2_power(d) * x
                if isinstance(x, _Quadratic):
                    if isinstance(x, Scalar2) and not x.is_rational():
                        raise AssertionError(f"irrational restricted action entry {x!r} for {elem}")
                    if x.is_rational():
                        x = x.to_fraction()
                if x != 0:
                    out[i] = x
            if out:
                clean[j] = out
        action[elem] = clean
    mod = CyclicModule(tca, lam, "restricted", None, up.bound, tags, up.cyclic, action, [])
    reach = cyclic_span_dim(mod, {mod.cyclic: Fraction(1)})
    mod.report = [
        {"check": "untwisted-certified", "pass": all(r["pass"] for r in up.report), "detail": f"ambient lambda {list(lam_amb)}, dim {up.dim}"},
        {"check": "cyclic", "pass": reach == mod.dim, "detail": f"span of U(g[t]^sigma).v has dim {reach} of {mod.dim}"},
    ]
    return mod


def _sqrt2_power(d: int) -> Scalar2:
    out = Scalar2(1)
    for _ in range(abs(d)):
        out = out * SQRT2
    return out if d > 0 else out.inverse()


def filtered_character(mod: CyclicModule) -> GradedCharacter:
    """Character of the associated graded of U(g[t]^sigma)_{<= k} v, k = total t-degree."""
    elems = list(mod.action)
    by_deg: Dict[int, List[CurrentBasisElement]] = {}
    for e in elems:
        by_deg.setdefault(e.tdeg, []).append(e)
    weight = {j: w for j, (w, _) in enumerate(mod.tags)}
    ech: Dict[Tuple[int, ...], Echelon] = {}
    layers: List[List[Dict[int, object]]] = []
    out: GradedCharacter = {}

    def wt_of(vec):
        return weight[next(iter(vec))]

    k = 0
    total = 0
    while total < mod.dim and k <= mod.bound + 4:
        seeds = [{mod.cyclic: Fraction(1)}] if k == 0 else []
        for d in range(1, k + 1):
            for e in by_deg.get(d, ()):
                for w in layers[k - d]:
                    seeds.append(mod.apply(e, w))
        new: List[Dict[int, object]] = []
        queue = seeds
        while queue:
            u = queue.pop()
            if not u:
                continue
            key = wt_of(u)
            r = ech.setdefault(key, Echelon()).add(u)
            if r is None:
                continue
            new.append(r)
            out[(key, k)] = out.get((key, k), 0) + 1
            for e in by_deg.get(0, ()):
                queue.append(mod.apply(e, r))
        layers.append(new)
        total += len(new)
        k += 1
    return out


def verify_restriction(fa: FoldedAlgebra, lam: Sequence[int]) -> List[dict]:
    """Compare the restricted untwisted Weyl module with the twisted one.

    The verdict is the graded restriction (bijective intertwiner v -> v).  The
    restriction pulled back along t -> t + 1 is reported alongside: cyclicity
    and the character of its associated graded.
    """
    W = build_weyl(fa, lam)
    R = restrict_untwisted(fa, lam)
    rep = [dict(r, check="restriction:" + r["check"]) for r in R.report]
    chW, chR = graded_character(W), graded_character(R)
    rep.append({"check": "graded-character", "pass": chW == chR, "detail": _char_diff(chW, chR)})
    _, irep = intertwiner(W, R)
    rep += irep
    rep.append({"check": "bijective", "pass": all(r["pass"] for r in irep) and W.dim == R.dim, "detail": f"dims {W.dim} -> {R.dim}"})
    S = restrict_untwisted(fa, lam, shift=1)
    chS = filtered_character(S)
    rep.append({"check": "observed:shifted-restriction-cyclic", "pass": True, "detail": S.report[1]["detail"]})
    rep.append({"check": "observed:shifted-associated-graded", "pass": True, "detail": f"equals twisted Weyl character: {chS == chW}"})
    return rep


def _char_diff(a: GradedCharacter, b: GradedCharacter) -> str:
    keys = sorted(set(a) | set(b))
    diff = [(list(w), g, a.get((w, g), 0), b.get((w, g), 0)) for w, g in keys if a.get((w, g), 0) != b.get((w, g), 0)]
    if not diff:
        return f"equal (dim {sum(a.values())})"
    return "differ at " + "; ".join(f"(weight {w}, grade {g}): {x} vs {y}" for w, g, x, y in diff[:8])


# -- the level one theorem ---------------------------------------------------------

WD_TYPES = "A_{2l-1}^(2), D_{l+1}^(2), E_6^(2), D_4^(3) (and untwisted simply laced)"


def wd_applicable(fa: FoldedAlgebra) -> bool:
    if fa.m == 1:
        return fa.ambient.root_system.lacing == 1
    return not fa.is_A2n


def verify_wd(fa: FoldedAlgebra, lam: Sequence[int], strict: bool = True) -> List[dict]:
    """Compare the Weyl module, the level-one Demazure module and the affine Demazure oracle.

    Outside the theorem's type list, strict mode refuses; report-only mode
    returns the three characters as observations.
    """
    lam = _check_lambda(fa, lam)
    ok_type = wd_applicable(fa)
    if strict and not ok_type:
        raise ModuleError(
            f"verify wd: {fa.ambient.root_system.label} with an order {fa.m} automorphism is outside the "
            f"theorem's type list {WD_TYPES}; rerun without --strict for a report-only comparison"
        )
    W = build_weyl(fa, lam)
    D = build_demazure(fa, 1, lam)
    chW, chD = graded_character(W), graded_character(D)
    try:
        chO: Optional[GradedCharacter] = graded_demazure(fa, 1, lam)
        odetail = ""
    except AffineError as e:
        chO, odetail = None, str(e)
    _, srep = intertwiner(W, D)
    rep = [
        {"check": "weyl-certified", "pass": all(r["pass"] for r in W.report), "detail": f"dim {W.dim}, bound {W.bound}"},
        {"check": "demazure-certified", "pass": all(r["pass"] for r in D.report), "detail": f"dim {D.dim}, bound {D.bound}"},
        {"check": "demazure-quotient-of-weyl", "pass": all(r["pass"] for r in srep), "detail": "; ".join(r["detail"] for r in srep)},
    ]
    prefix = "" if ok_type else "observed:"
    rep.append({"check": prefix + "weyl=demazure", "pass": ok_type and chW == chD or not ok_type, "detail": _char_diff(chW, chD)})
    if chO is None:
        rep.append({"check": prefix + "demazure=oracle", "pass": not ok_type, "detail": "oracle unavailable: " + odetail})
    else:
        rep.append({"check": prefix + "demazure=oracle", "pass": ok_type and chD == chO or not ok_type, "detail": _char_diff(chD, chO)})
    return rep


# -- integral forms ----------------------------------------------------------------

@dataclass
class IntegralLattice:
    blocks: Dict[Tuple[Tuple[int, ...], int], dict]  # (weight, grade) -> {"rows", "divisors", "scale"}
    rank: int
    dim: int

    @property
    def divisors(self) -> List[int]:
        out = []
        for key in sorted(self.blocks):
            out += self.blocks[key]["divisors"]
        return out

    def mod_p_dim(self, p: int) -> int:
        """Dimension over F_p of the reduction of the image lattice in the reference coordinates."""
        return sum(sum(1 for d in b["divisors"] if d % p) for b in self.blocks.values())


def integral_lattice(mod: CyclicModule, bound: Optional[int] = None, p: Optional[int] = None) -> IntegralLattice:
    """Images of v under divided-power monomials in the lowering generators, blockwise.

    Reference coordinates: the module basis with each basis monomial taken as a
    divided-power monomial.  Rows are these images scaled by the least common
    denominator of their block ("scale"); elementary divisors come from the
    Smith normal form of each block.
    """
    fa = mod.folded
    if p == 2 and fa.is_A2n:
        raise ModuleError("p = 2 is not allowed for an A_{2n} ambient algebra: the folded basis needs 1/2 and sqrt 2")
    if mod.kind not in ("weyl", "demazure", "top"):
        raise ModuleError("integral lattice needs a module built from the induced module (weyl, demazure or its top)")
    env = envelope_for(fa, mod.bound + 1)
    tca = env.tca
    hyper = bound if bound is not None else max((len(m) for m in mod.monomials), default=0) + 1
    # reference basis: divided-power normalization of the basis monomials
    ref_scale = [Fraction(1, _mult_factorial(m)) for m in mod.monomials]
    where_block: Dict[Tuple[Tuple[int, ...], int], List[int]] = {}
    for j, t in enumerate(mod.tags):
        where_block.setdefault(t, []).append(j)
    gens = [p_ for p_ in range(len(env.gen)) if env.kind[p_] == "x-"]
    images: Dict[Tuple[Tuple[int, ...], int], List[Dict[int, Fraction]]] = {}

    def rec(start: int, vec: Dict[int, Fraction], depth: int) -> None:
        if not vec:
            return
        key = mod.tags[next(iter(vec))]
        images.setdefault(key, []).append(vec)
        if depth == hyper:
            return
        for k in range(start, len(gens)):
            elem = tca.basis[env.gen[gens[k]]]
            # divided powers of one generator, applied on the left of the monomial
            u = vec
            for e in range(1, hyper - depth + 1):
                u = {i: c / e for i, c in mod.apply(elem, u).items()}
                if not u:
                    break
                rec(k + 1, u, depth + e)

    # PBW monomials are ordered; building from the right keeps them ordered (generators in decreasing position)
    gens.reverse()
    rec(0, {mod.cyclic: Fraction(1)}, 0)
    blocks = {}
    total_rank = 0
    for key, idx in sorted(where_block.items()):
        rows = []
        for vec in images.get(key, []):
            rows.append([vec.get(j, Fraction(0)) / ref_scale[j] for j in idx])
        den = 1
        for r in rows:
            for x in r:
                den = den * x.denominator // math.gcd(den, x.denominator)
        irows = [[int(x * den) for x in r] for r in rows]
        divs = elementary_divisors(irows) if irows else []
        total_rank += len(divs)
        blocks[key] = {"rows": irows, "divisors": divs, "scale": den}
    if total_rank != mod.dim:
        raise UnstabilizedError(f"lattice not saturated: rank {total_rank} < dim {mod.dim} at monomial bound {hyper}")
    return IntegralLattice(blocks, total_rank, mod.dim)


def _mult_factorial(mono: Monomial) -> int:
    f = 1
    run = 1
    for a, b in zip(mono, mono[1:]):
        run = run + 1 if a == b else 1
        f *= run
    return f
