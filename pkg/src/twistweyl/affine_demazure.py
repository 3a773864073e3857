"""Twisted affine root data, Demazure operators and graded specialization.

Affine weights are stored as (c, d): c[i] = <mu, h_i> for i in {0} + I0 (index
0 is the affine node, index i >= 1 is the g0 node i - 1) and d = <mu, d>,
the delta coefficient.  Simple roots are alpha_j = sum_i A[i][j] Lambda_i +
[j == 0] delta, with A[i][j] = <alpha_j, h_i>.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .folding import FoldedAlgebra

AffWeight = Tuple[Tuple[int, ...], int]
Character = Dict[AffWeight, int]


class AffineError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class AffineRootData:
    cartan: Tuple[Tuple[int, ...], ...]  # A[i][j] = <alpha_j, h_i>
    theta1: Tuple[int, ...]
    m: int
    a0: int
    folded: Optional[FoldedAlgebra] = None

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @cached_property
    def comarks(self) -> Tuple[int, ...]:
        """Primitive positive a^vee with sum_i a^vee_i A[i][j] = 0."""
        return _null_vector([list(col) for col in zip(*self.cartan)])

    @cached_property
    def marks(self) -> Tuple[int, ...]:
        """Primitive positive a with sum_j A[i][j] a_j = 0 (delta = sum a_j alpha_j)."""
        return _null_vector([list(row) for row in self.cartan])

    def alpha(self, j: int) -> AffWeight:
        return tuple(self.cartan[i][j] for i in range(self.rank)), int(j == 0)

    def level(self, w: AffWeight) -> int:
        return sum(a * c for a, c in zip(self.comarks, w[0]))

    def reflect(self, w: AffWeight, i: int) -> AffWeight:
        c, d = w
        k = c[i]
        if k == 0:
            return w
        ai, di = self.alpha(i)
        return tuple(x - k * y for x, y in zip(c, ai)), d - k * di

    def is_dominant(self, w: AffWeight) -> bool:
        return all(x >= 0 for x in w[0])

    def lambda_on_h_theta1(self, lam: Sequence[int]) -> Fraction:
        """lambda(h_{theta_1}) for lambda in g0 fundamental coordinates."""
        return sum(Fraction(a, self.comarks[0]) * x for a, x in zip(self.comarks[1:], lam))

    def target(self, level: int, lam: Sequence[int]) -> AffWeight:
        """The affine weight level*Lambda_0 - lambda (delta coefficient 0)."""
        c0 = level + self.lambda_on_h_theta1(lam)
        if c0.denominator != 1:
            raise AffineError(
                f"level {level} and lambda {list(lam)} give a non-integral <h_0> pairing {c0}; "
                "lambda must pair integrally with h_theta1"
            )
        return (int(c0),) + tuple(-x for x in lam), 0


def _null_vector(rows: List[List[int]]) -> Tuple[int, ...]:
    """Primitive positive integer vector v with rows . v = 0 (corank one)."""
    n = len(rows[0])
    M = [[Fraction(x) for x in r] for r in rows]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        M[r] = [x / M[r][c] for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
    free = [c for c in range(n) if c not in piv_cols]
    if len(free) != 1:
        raise AffineError("affine Cartan matrix does not have corank one")
    f = free[0]
    v = [Fraction(0)] * n
    v[f] = Fraction(1)
    for i, c in enumerate(piv_cols):
        v[c] = -M[i][f]
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in v), 1)
    ints = [int(x * den) for x in v]
    g = reduce(gcd, ints)
    ints = [x // g for x in ints]
    if all(x <= 0 for x in ints):
        ints = [-x for x in ints]
    if any(x <= 0 for x in ints):
        raise AffineError("null vector is not positive")
    return tuple(ints)


def build_affine_data(fa: FoldedAlgebra) -> AffineRootData:
    g0 = fa.g0
    n = g0.rank
    theta = fa.theta1
    norm_t = g0.form_roots(theta, theta)
    A = [[0] * (n + 1) for _ in range(n + 1)]
    A[0][0] = 2
    for i in range(n):
        ei = tuple(int(k == i) for k in range(n))
        for j in range(n):
            A[i + 1][j + 1] = g0.cartan[i][j]
        v = -2 * g0.form_roots(theta, ei) / g0.form_roots(ei, ei)
        w = -2 * g0.form_roots(ei, theta) / norm_t
        if Fraction(v).denominator != 1 or Fraction(w).denominator != 1:
            raise AffineError("non-integral affine Cartan entry")
        A[i + 1][0] = int(v)
        A[0][i + 1] = int(w)
    return AffineRootData(tuple(tuple(r) for r in A), tuple(theta), fa.m, fa.a0, fa)


def to_dominant_with_word(ard: AffineRootData, mu: AffWeight, max_steps: int = 100000) -> Tuple[AffWeight, Tuple[int, ...], int]:
    """Reflect mu to the dominant chamber, least index first.

    Returns (Lambda, word, n) with s_{w1} ... s_{wk} Lambda = mu and n the
    delta shift such that Lambda has the delta coefficient of the reflected
    weight (mu itself keeps delta coefficient mu[1]).
    """
    if ard.level(mu) <= 0 and any(mu[0]):
        raise AffineError("no dominant representative at nonpositive level")
    word = []
    cur = mu
    for _ in range(max_steps):
        neg = [i for i, x in enumerate(cur[0]) if x < 0]
        if not neg:
            return cur, tuple(word), cur[1] - mu[1]
        i = neg[0]
        cur = ard.reflect(cur, i)
        word.append(i)
    raise AffineError("reflection walk did not terminate")


def apply_word(ard: AffineRootData, w: AffWeight, word: Sequence[int]) -> AffWeight:
    """s_{word[0]} ... s_{word[-1]} applied to w."""
    for i in reversed(word):
        w = ard.reflect(w, i)
    return w


def demazure_operator(ard: AffineRootData, ch: Character, i: int) -> Character:
    out: Character = {}
    ai = ard.alpha(i)
    for (c, d), mult in ch.items():
        k = c[i]
        if k >= 0:
            steps = [(j, 1) for j in range(0, k + 1)]
        elif k == -1:
            steps = []
        else:
            steps = [(-j, -1) for j in range(1, -k)]
        for j, sgn in steps:
            w = (tuple(x - j * y for x, y in zip(c, ai[0])), d - j * ai[1])
            out[w] = out.get(w, 0) + sgn * mult
    return {w: v for w, v in out.items() if v != 0}


def demazure_character(ard: AffineRootData, Lam: AffWeight, word: Sequence[int]) -> Character:
    if not ard.is_dominant(Lam):
        raise AffineError("Demazure character needs a dominant weight")
    ch: Character = {Lam: 1}
    for i in reversed(word):
        ch = demazure_operator(ard, ch, i)
    return ch


def specialize_graded(ard: AffineRootData, ch: Character, extremal: AffWeight) -> Dict[Tuple[Tuple[int, ...], int], int]:
    """(g0 weight, grade) multiplicities: weight = -(finite part), grade = delta shift from the extremal weight."""
    out: Dict[Tuple[Tuple[int, ...], int], int] = {}
    lam = tuple(-x for x in extremal[0][1:])
    for (c, d), mult in ch.items():
        key = (tuple(-x for x in c[1:]), d - extremal[1])
        out[key] = out.get(key, 0) + mult
    out = {k: v for k, v in out.items() if v != 0}
    if any(g < 0 for _, g in out) or any(v < 0 for v in out.values()):
        raise AffineError("specialization produced negative grades or multiplicities")
    if out.get((lam, 0)) != 1:
        raise AffineError("lambda does not sit at grade 0 with multiplicity 1")
    return out


def graded_demazure(fa: FoldedAlgebra, level: int, lam: Sequence[int]) -> Dict[Tuple[Tuple[int, ...], int], int]:
    """Oracle graded character of the level-`level` Demazure module attached to lam."""
    if any(x < 0 for x in lam) or level < 0:
        raise AffineError(f"lambda {list(lam)} and level {level} must be dominant")
    ard = build_affine_data(fa)
    mu = ard.target(level, lam)
    Lam, word, _ = to_dominant_with_word(ard, mu)
    ch = demazure_character(ard, Lam, word)
    return specialize_graded(ard, ch, mu)


# -- checks ---------------------------------------------------------------------

def check_idempotent(ard: AffineRootData, trials: int = 20, seed: int = 0) -> List[dict]:
    rng = random.Random(seed)
    report = []
    n = ard.rank
    for t in range(trials):
        ch: Character = {}
        for _ in range(rng.randint(1, 4)):
            c = tuple(rng.randint(-3, 3) for _ in range(n))
            ch[(c, rng.randint(-2, 2))] = rng.randint(-3, 3) or 1
        i = rng.randrange(n)
        once = demazure_operator(ard, ch, i)
        twice = demazure_operator(ard, once, i)
        report.append({"check": "D_i^2=D_i", "pass": once == twice, "detail": f"trial {t} i={i}"})
    return report


def braid_pairs(ard: AffineRootData) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Pairs of distinct reduced words for the same Weyl group element (braid relations)."""
    order = {0: 2, 1: 3, 2: 4, 3: 6}
    pairs = []
    n = ard.rank
    for i in range(n):
        for j in range(i + 1, n):
            p = ard.cartan[i][j] * ard.cartan[j][i]
            if p not in order:
                continue
            L = order[p]
            w1 = tuple(i if k % 2 == 0 else j for k in range(L))
            w2 = tuple(j if k % 2 == 0 else i for k in range(L))
            pairs.append((w1, w2))
    return pairs


def check_word_independence(ard: AffineRootData, Lam: AffWeight, prefix: Sequence[int] = ()) -> List[dict]:
    report = []
    for w1, w2 in braid_pairs(ard):
        a = demazure_character(ard, Lam, tuple(prefix) + w1)
        b = demazure_character(ard, Lam, tuple(prefix) + w2)
        report.append({"check": "word-independence", "pass": a == b, "detail": f"{w1} vs {w2}"})
    return report


def lambda_on_coroot(g0, lam: Sequence[int], beta: Sequence[int]) -> Fraction:
    """lambda(h_beta) = 2(lambda, beta)/(beta, beta) for a g0 weight lam (fundamental coordinates)."""
    nb = g0.form_roots(beta, beta)
    tot = Fraction(0)
    for i, b in enumerate(beta):
        ei = tuple(int(k == i) for k in range(g0.rank))
        tot += lam[i] * Fraction(b) * g0.form_roots(ei, ei) / nb
    return tot


def rhat_value(ard: AffineRootData, beta: Sequence[int]) -> Fraction:
    """2/(beta|beta) in the normalization (theta1|theta1) = 2."""
    g0 = ard.folded.g0
    t = ard.theta1
    return Fraction(g0.form_roots(t, t)) / g0.form_roots(beta, beta)


def rhat_printed(ard: AffineRootData, beta: Sequence[int]) -> Fraction:
    """m r_beta / a0 with r_beta = 2/(beta, beta), long roots of g0 of squared length 2."""
    g0 = ard.folded.g0
    longest = max(g0.form_roots(r, r) for r in g0.roots)
    r = 2 * longest / (2 * g0.form_roots(beta, beta))
    return Fraction(ard.m) * r / ard.a0


def real_roots(ard: AffineRootData, s_max: int) -> Dict[Tuple[int, ...], Tuple[int, ...]]:
    """Real roots (simple-root coordinates, alpha_0 first) with |alpha_0 coefficient| <= s_max, mapped to coroots."""
    n = ard.rank
    A = ard.cartan
    seen: Dict[Tuple[int, ...], Tuple[int, ...]] = {}
    frontier = []
    for i in range(n):
        e = tuple(int(k == i) for k in range(n))
        seen[e] = e
        frontier.append(e)
    while frontier:
        nxt = []
        for g in frontier:
            h = seen[g]
            for j in range(n):
                pair = sum(g[k] * A[j][k] for k in range(n))
                g2 = tuple(g[k] - pair * (k == j) for k in range(n))
                if abs(g2[0]) > s_max or g2 in seen:
                    continue
                apair = sum(h[k] * A[k][j] for k in range(n))
                seen[g2] = tuple(h[k] - apair * (k == j) for k in range(n))
                nxt.append(g2)
        frontier = nxt
    return seen


def coroot_evaluation_table(ard: AffineRootData, level: int, lam: Sequence[int], s_max: int = 3, rhat=None) -> List[dict]:
    """Check <level*Lambda_0 - lambda, h_gamma> = -+lambda(h_alpha) + s*level*rhat_alpha for gamma = +-alpha + s delta.

    Coroots h_gamma come from the Weyl group action on simple coroots, so
    the check is independent of the closed formula it tests.
    """
    g0 = ard.folded.g0
    rhat = rhat or rhat_value
    mu_c, _ = ard.target(level, lam)
    report = []
    for gamma, cor in sorted(real_roots(ard, s_max).items()):
        s = gamma[0]
        if s < 0:
            continue
        fin = tuple(gamma[j + 1] - s * ard.theta1[j] for j in range(g0.rank))
        if not any(fin):
            continue
        sign = 1 if any(x > 0 for x in fin) else -1
        alpha = fin if sign > 0 else tuple(-x for x in fin)
        val = sum(c * x for c, x in zip(cor, mu_c))
        expected = -sign * lambda_on_coroot(g0, lam, alpha) + s * level * rhat(ard, alpha)
        report.append({
            "check": "coroot-evaluation",
            "pass": val == expected,
            "detail": f"gamma={'+' if sign > 0 else '-'}{list(alpha)}+{s}delta value={val} rhat={rhat(ard, alpha)}",
        })
    return report
