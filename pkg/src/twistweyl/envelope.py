"""PBW arithmetic in U(g[t]^sigma) truncated at t-degree D.

Elements are stored in ordinary-power PBW coordinates: a monomial is a
nondecreasing tuple of generator positions in the fixed total order
(x^- < h < x^+, then t-degree, then weight height, then label).  Divided
power coordinates are obtained by multiplying by the product of factorials
of the multiplicities.
"""
from __future__ import annotations

import math
import random
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .current import CurrentBasisElement, TruncatedCurrentAlgebra, build_truncated
from .folding import FoldedAlgebra, fold

Monomial = Tuple[int, ...]
_KIND_RANK = {"x-": 0, "h": 1, "x+": 2}


class Envelope:
    """U(g[t]^sigma / t^D) with a fixed PBW order."""

    def __init__(self, tca: TruncatedCurrentAlgebra):
        self.tca = tca
        fa = tca.folded

        def key(i: int):
            b = tca.basis[i]
            w = fa.weight(tca.folded_index[i])
            lab = b.label if isinstance(b.label, int) else tuple(b.label)
            return (_KIND_RANK[b.kind], b.tdeg, sum(abs(x) for x in w), str(lab), i)

        order = sorted(range(tca.dim), key=key)
        self.gen = tuple(order)  # position -> tca index
        self.pos = {g: p for p, g in enumerate(order)}
        self.kind = tuple(tca.basis[g].kind for g in order)
        self.tdeg = tuple(tca.basis[g].tdeg for g in order)
        self._bracket: Dict[Tuple[int, int], Tuple[Tuple[int, object], ...]] = {}
        for (i, j), terms in tca.table.items():
            self._bracket[(self.pos[i], self.pos[j])] = tuple((self.pos[k], c) for k, c in terms)
        self._rmul_cache: Dict[Tuple[Monomial, int], Dict[Monomial, object]] = {}

    # -- core straightening ------------------------------------------------
    def _rmul(self, mono: Monomial, g: int) -> Dict[Monomial, object]:
        """Normal form of mono * g."""
        if not mono or mono[-1] <= g:
            return {mono + (g,): 1}
        key = (mono, g)
        hit = self._rmul_cache.get(key)
        if hit is not None:
            return hit
        last = mono[-1]
        head = mono[:-1]
        out: Dict[Monomial, object] = {}
        # head * last * g = head * g * last + head * [last, g]
        for t, c in self._rmul(head, g).items():
            for t2, c2 in self._rmul(t, last).items():
                out[t2] = out.get(t2, 0) + c * c2
        for k, ck in self._bracket.get((last, g), ()):
            for t, c in self._rmul(head, k).items():
                out[t] = out.get(t, 0) + ck * c
        out = {t: c for t, c in out.items() if c != 0}
        self._rmul_cache[key] = out
        return out

    def mul(self, a: Dict[Monomial, object], b: Dict[Monomial, object]) -> Dict[Monomial, object]:
        out: Dict[Monomial, object] = {}
        for mb, cb in b.items():
            cur = {ma: ca * cb for ma, ca in a.items()}
            for g in mb:
                nxt: Dict[Monomial, object] = {}
                for t, c in cur.items():
                    for t2, c2 in self._rmul(t, g).items():
                        nxt[t2] = nxt.get(t2, 0) + c * c2
                cur = nxt
            for t, c in cur.items():
                out[t] = out.get(t, 0) + c
        return {t: c for t, c in out.items() if c != 0}

    # -- constructors ------------------------------------------------------
    def one(self) -> "UElement":
        return UElement(self, {(): Fraction(1)})

    def zero(self) -> "UElement":
        return UElement(self, {})

    def gen_of(self, tca_index: int) -> int:
        return self.pos[tca_index]

    def lie(self, vec: Dict[int, object]) -> "UElement":
        """Embed a Lie algebra element (tca coordinates)."""
        return UElement(self, {(self.pos[i],): c for i, c in vec.items() if c != 0})

    def basis_elem(self, kind: str, label, tdeg: int) -> Optional["UElement"]:
        i = self.tca.element(kind, label, tdeg)
        if i is None:
            return None
        return UElement(self, {(self.pos[i],): Fraction(1)})

    def divided(self, vec: Dict[int, object], k: int) -> "UElement":
        """k-th divided power of a Lie algebra element."""
        x = self.lie(vec)
        out = self.one()
        for _ in range(k):
            out = out * x
        return out * Fraction(1, math.factorial(k))

    # -- coordinates -------------------------------------------------------
    @staticmethod
    def divided_coefficient(mono: Monomial, c):
        """Coefficient of the divided-power monomial corresponding to mono."""
        f = 1
        run = 1
        for a, b in zip(mono, mono[1:]):
            if a == b:
                run += 1
                f *= run
            else:
                run = 1
        return c * f

    def describe(self, mono: Monomial) -> str:
        parts = []
        i = 0
        while i < len(mono):
            j = i
            while j < len(mono) and mono[j] == mono[i]:
                j += 1
            b = self.tca.basis[self.gen[mono[i]]]
            parts.append(f"({b})^({j - i})" if j - i > 1 else str(b))
            i = j
        return "*".join(parts) or "1"

    def hyperdegree(self, mono: Monomial) -> int:
        return len(mono)

    def tweight(self, mono: Monomial) -> int:
        return sum(self.tdeg[g] for g in mono)

    def g0weight(self, mono: Monomial):
        fa = self.tca.folded
        w = [0] * fa.g0.rank
        for g in mono:
            for k, x in enumerate(self.tca.weight(self.gen[g])):
                w[k] += x
        return tuple(w)


class UElement:
    __slots__ = ("env", "terms")

    def __init__(self, env: Envelope, terms: Dict[Monomial, object]):
        self.env = env
        self.terms = {m: c for m, c in terms.items() if c != 0}

    def __add__(self, other: "UElement") -> "UElement":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return UElement(self.env, out)

    def __neg__(self) -> "UElement":
        return UElement(self.env, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "UElement") -> "UElement":
        return self + (-other)

    def __mul__(self, other) -> "UElement":
        if isinstance(other, UElement):
            return UElement(self.env, self.env.mul(self.terms, other.terms))
        return UElement(self.env, {m: c * other for m, c in self.terms.items()})

    def __rmul__(self, other) -> "UElement":
        return UElement(self.env, {m: other * c for m, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, UElement):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        return all(self.terms.get(k, 0) == other.terms.get(k, 0) for k in keys)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def divided_coordinates(self) -> Dict[Monomial, object]:
        return {m: self.env.divided_coefficient(m, c) for m, c in self.terms.items()}

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{self.env.describe(m)}" for m, c in sorted(self.divided_coordinates().items()))


def build_envelope(fa: FoldedAlgebra, D: int) -> Envelope:
    return Envelope(build_truncated(fa, D))


def pbw_multiply(a: UElement, b: UElement) -> UElement:
    return a * b


# -- power series in u with UElement coefficients ---------------------------

def series_mul(env: Envelope, a: List[UElement], b: List[UElement], n: int) -> List[UElement]:
    out = [env.zero() for _ in range(n + 1)]
    for i, ai in enumerate(a[: n + 1]):
        if ai.is_zero():
            continue
        for j, bj in enumerate(b[: n + 1 - i]):
            if not bj.is_zero():
                out[i + j] = out[i + j] + ai * bj
    return out


def series_exp(env: Envelope, s: List[UElement], n: int) -> List[UElement]:
    """exp of a series without constant term, assuming commuting coefficients."""
    e = [env.one()] + [env.zero() for _ in range(n)]
    for k in range(1, n + 1):
        acc = env.zero()
        for j in range(1, k + 1):
            if j < len(s) and not s[j].is_zero():
                acc = acc + (s[j] * Fraction(j)) * e[k - j]
        e[k] = acc * Fraction(1, k)
    return e


def series_divided_power(env: Envelope, x: List[UElement], k: int, n: int) -> List[UElement]:
    """X(u)^(k) = X(u)^k / k! truncated at u^n."""
    out = [env.one()] + [env.zero() for _ in range(n)]
    for _ in range(k):
        out = series_mul(env, out, x, n)
    return [c * Fraction(1, math.factorial(k)) for c in out]


# -- Garland elements --------------------------------------------------------

def _h_current(env: Envelope, mu, eps: int, tdeg: int) -> Dict[int, object]:
    """h_{mu,eps} (x) t^tdeg in tca coordinates."""
    fa = env.tca.folded
    h = fa.h_folded(mu, eps)
    out = {}
    for k, c in h.items():
        i = env.tca._by_fold.get((k, tdeg))
        if i is not None:
            out[i] = c
    return out


def lambda_variant(fa: FoldedAlgebra, mu) -> str:
    if fa.m == 1:
        return "untwisted"
    if fa.is_A2n or fa.is_short(mu):
        return "twisted-short"
    return "twisted-long"


def garland_lambda(env: Envelope, mu, r_max: int) -> List[UElement]:
    """Coefficients Lambda^sigma_{mu,0..r_max}."""
    fa = env.tca.folded
    if r_max >= env.tca.D:
        raise ValueError("r_max must be below the truncation cutoff")
    m = fa.m
    s = [env.zero() for _ in range(r_max + 1)]
    if lambda_variant(fa, mu) == "twisted-long":
        for k in range(1, r_max + 1):
            if m * k < env.tca.D:
                s[k] = env.lie(_h_current(env, mu, 0, m * k)) * Fraction(-1, k)
    else:
        for n in range(1, r_max + 1):
            eps = (-n) % m
            s[n] = env.lie(_h_current(env, mu, eps, n)) * Fraction(-1, n)
    return series_exp(env, s, r_max)


def garland_lambda_untwisted(env: Envelope, alpha, k: int, r_max: int) -> List[UElement]:
    """Lambda_{alpha;k}(u) = exp(-sum_s h_alpha (x) t^{sk} u^s / s) for an untwisted envelope."""
    s = [env.zero() for _ in range(r_max + 1)]
    for j in range(1, r_max + 1):
        if j * k < env.tca.D:
            s[j] = env.lie(_h_current(env, alpha, 0, j * k)) * Fraction(-1, j)
    return series_exp(env, s, r_max)


# -- psi ------------------------------------------------------------------------

def _psi_generator(env: Envelope, g: int) -> Dict[int, object]:
    tca = env.tca
    fa = tca.folded
    b = tca.basis[env.gen[g]]
    if b.kind == "h":
        return {env.gen[g]: -1}
    other = "x-" if b.kind == "x+" else "x+"
    tag_kind = b.kind
    rep = fa.rep_of[(tag_kind, b.label, fa.tags[tca.folded_index[env.gen[g]]].eps)]
    sign = -1 if (sum(rep) - 1) % 2 else 1
    j = tca.element(other, b.label, b.tdeg)
    return {j: sign}


def psi_apply(u: UElement) -> UElement:
    """The automorphism x^+- -> (-1)^{ht-1} x^-+, h -> -h, applied multiplicatively."""
    env = u.env
    images = {}
    out = env.zero()
    for mono, c in u.terms.items():
        acc = env.one() * c
        for g in mono:
            if g not in images:
                images[g] = env.lie(_psi_generator(env, g))
            acc = acc * images[g]
        out = out + acc
    return out


# -- lambda projection ------------------------------------------------------------

def lambda_project(u: UElement, lam: Sequence[int]) -> UElement:
    """Apply u to a highest-weight vector of weight lam (g0 fundamental coordinates)."""
    env = u.env
    tca = env.tca
    fa = tca.folded
    out: Dict[Monomial, object] = {}
    for mono, c in u.terms.items():
        coef = c
        keep = []
        for g in mono:
            kind = env.kind[g]
            if kind == "x+":
                coef = 0
                break
            if kind == "h":
                if env.tdeg[g] > 0:
                    coef = 0
                    break
                tag = fa.tags[tca.folded_index[env.gen[g]]]
                coef = coef * lam[tag.label]
            else:
                keep.append(g)
        if coef != 0:
            t = tuple(keep)
            out[t] = out.get(t, 0) + coef
    return UElement(env, out)


def in_U_plus(u: UElement) -> bool:
    """Membership in U(n^-[t])U(h[t]_+)^0 + U(g[t])U(n^+[t])^0, read off the normal form."""
    env = u.env
    for mono in u.terms:
        kinds = [env.kind[g] for g in mono]
        if "x+" in kinds:
            continue
        hs = [g for g in mono if env.kind[g] == "h"]
        if hs and all(env.tdeg[g] > 0 for g in hs):
            continue
        return False
    return True


# -- identity battery ----------------------------------------------------------

_ENV_CACHE: Dict[Tuple[int, int], Envelope] = {}


def envelope_for(fa: FoldedAlgebra, D: int) -> Envelope:
    key = (id(fa), D)
    env = _ENV_CACHE.get(key)
    if env is None or env.tca.folded is not fa:
        env = build_envelope(fa, D)
        _ENV_CACHE[key] = env
    return env


def _x(env: Envelope, sign: str, mu, tdeg: int) -> Optional[UElement]:
    return env.basis_elem(sign, tuple(mu), tdeg)


def _div(env: Envelope, x: Optional[UElement], k: int) -> UElement:
    if k == 0:
        return env.one()
    if x is None:
        return env.zero()
    out = env.one()
    for _ in range(k):
        out = out * x
    return out * Fraction(1, math.factorial(k))


def _series(env: Envelope, sign: str, mu, degrees: Callable[[int], int], n: int, powers: Callable[[int], int] = lambda j: j) -> List[UElement]:
    """sum_j x^sign_mu (x) t^{degrees(j)} u^{powers(j)}, truncated at u^n."""
    out = [env.zero() for _ in range(n + 1)]
    j = 1
    while powers(j) <= n:
        x = _x(env, sign, mu, degrees(j))
        if x is not None:
            out[powers(j)] = out[powers(j)] + x
        j += 1
    return out


def garland_cases(fa: FoldedAlgebra) -> List[str]:
    """Identity cases with at least one root to test on."""
    if fa.m == 1:
        return ["untwisted"]
    cases = ["a", "c-i", "c-ii", "c-iii"] if fa.is_A2n else ["a", "b"]
    return [c for c in cases if garland_roots(fa, c)]


def garland_roots(fa: FoldedAlgebra, case: str) -> List[tuple]:
    pos = fa.R_eps(0)
    if case == "untwisted":
        return list(pos)
    if case == "a":
        if fa.is_A2n:
            return [mu for mu in pos if not fa.is_short(mu)]
        return [mu for mu in pos if fa.is_short(mu)]
    if case == "b":
        return [mu for mu in pos if not fa.is_short(mu)]
    return [mu for mu in pos if fa.is_short(mu) and tuple(2 * x for x in mu) in set(fa.R_eps(1))]


def garland_sides(fa: FoldedAlgebra, case: str, mu, l: int, k: int, r: int, s: int, literal: bool = True):
    """(lhs, rhs, env) for one instance of the straightening identities.

    Parameter use per case: a, b, untwisted: (l, k, r, s); c-i: (k, r, s);
    c-ii: (l, k); c-iii: (k, r).  With ``literal`` the formulas are taken as
    printed; otherwise the corrected forms are used (sign (-1)^l in the
    untwisted case, the sl2[t^m] form of c-i, sign (-1)^{k2} in c-iii).
    """
    m = fa.m
    mu = tuple(mu)
    if case in ("a", "untwisted"):
        D = s * l + r * k + (r + s) * k + 1
        env = envelope_for(fa, D)
        lhs = _div(env, _x(env, "x+", mu, s), l) * _div(env, _x(env, "x-", mu, r), k)
        X = _series(env, "x-", mu, lambda j: r + (r + s) * (j - 1), k)
        rhs = series_divided_power(env, X, k - l, k)[k]
        if case == "a" or not literal:
            rhs = rhs * (-1) ** l
    elif case == "b":
        D = m * (s * l + r * k + (r + s) * k) + 1
        env = envelope_for(fa, D)
        lhs = _div(env, _x(env, "x+", mu, m * s), l) * _div(env, _x(env, "x-", mu, m * r), k)
        X = _series(env, "x-", mu, lambda j: m * (r + (r + s) * (j - 1)), k)
        rhs = series_divided_power(env, X, k - l, k)[k] * (-1) ** l
    elif case == "c-i":
        D = m * s * (k + r) + 1
        env = envelope_for(fa, D)
        lhs = _div(env, _x(env, "x+", mu, m * s), k) * _div(env, _x(env, "x-", mu, 0), k + r)
        if literal:
            X = _series(env, "x-", mu, lambda j: m * s * j, k + r)
            rhs = series_divided_power(env, X, r, k + r)[k + r]
        else:
            # sl2[t^m] instance of the untwisted identity: shifted exponent and sign
            X = _series(env, "x-", mu, lambda j: m * s * (j - 1), k + r)
            rhs = series_divided_power(env, X, r, k + r)[k + r] * (-1) ** k
    elif case == "c-ii":
        two = tuple(2 * x for x in mu)
        D = 2 * k + 2 * k + 1
        env = envelope_for(fa, D)
        lhs = _div(env, _x(env, "x+", two, 1), l) * _div(env, _x(env, "x-", two, 1), k)
        Y = _series(env, "x-", two, lambda j: 2 * j - 1, k)
        rhs = series_divided_power(env, Y, k - l, k)[k] * (-1) ** l
    elif case == "c-iii":
        two = tuple(2 * x for x in mu)
        n = k + r
        D = k + 2 * (2 * k + r) + 2 * n + 1
        env = envelope_for(fa, D)
        lhs = _div(env, _x(env, "x+", two, 1), k) * _div(env, _x(env, "x-", mu, 0), 2 * k + r)
        X = _series(env, "x-", mu, lambda j: j - 1, n)
        Z = _series(env, "x-", two, lambda j: 2 * j - 1, n, powers=lambda j: 2 * j - 1)
        rhs = env.zero()
        for k2 in range(r // 2 + 1):
            k1 = r - 2 * k2
            prod = series_mul(env, series_divided_power(env, X, k1, n), series_divided_power(env, Z, k2, n), n)
            # x^-_{2mu,1} carries the opposite normalization sign to x^+_{2mu,1}
            rhs = rhs + prod[k + k1] * (1 if literal else (-1) ** k2)
    else:
        raise ValueError(f"unknown case {case!r}")
    return lhs, rhs, env


def verify_garland_identity(fa: FoldedAlgebra, case: str, l: int, k: int, r: int, s: int, mu=None, literal: bool = True) -> List[dict]:
    if case not in garland_cases(fa):
        raise ValueError(f"case {case} does not apply to this folding")
    roots = [tuple(mu)] if mu is not None else garland_roots(fa, case)
    report = []
    for nu in roots:
        lhs, rhs, _ = garland_sides(fa, case, nu, l, k, r, s, literal)
        ok = in_U_plus(lhs - rhs)
        report.append({"check": f"garland-{case}", "pass": ok, "detail": f"mu={list(nu)} l={l} k={k} r={r} s={s}"})
    return report


def verify_hyperdegree(env: Envelope, pairs: Iterable[Tuple[Tuple[int, int], Tuple[int, int]]]) -> List[dict]:
    """For ((g, j), (g2, k)) generator positions of the same sign, check the commutator drops hyperdegree."""
    report = []
    for (g, j), (g2, k) in pairs:
        a = _div(env, UElement(env, {(g,): Fraction(1)}), j)
        b = _div(env, UElement(env, {(g2,): Fraction(1)}), k)
        diff = a * b - b * a
        low = all(len(mono) < j + k for mono in diff.terms)
        integral = all(Fraction(c).denominator == 1 for c in diff.divided_coordinates().values())
        report.append({
            "check": "hyperdegree",
            "pass": low and integral,
            "detail": f"{env.describe((g,))}^({j}) vs {env.describe((g2,))}^({k})",
        })
    return report


def verify_lambda_relation(fa: FoldedAlgebra, mu, r_max: int, literal: bool = True) -> List[dict]:
    """Compare Lambda^sigma_mu(u) with the product of untwisted series, inside U(g[t]).

    For A_2n short roots h_{mu,eps} carries a factor 2, so the twisted series is
    the square of the product; ``literal=False`` compares with the square.
    """
    ambient_fold = fold(fa.ambient, "id")
    D = max(r_max, fa.m * r_max) + 1
    tw = envelope_for(fa, D)
    un = envelope_for(ambient_fold, D)
    alpha = fa.rep_root(mu)
    size = fa.orbit_size(alpha)
    lhs = [_embed(tw, un, ambient_fold, c) for c in garland_lambda(tw, mu, r_max)]
    if size == 1:
        rhs = garland_lambda_untwisted(un, alpha, fa.m, r_max)
        form = "Lambda_{alpha;m}(u)"
    else:
        from .scalars import root_of_unity_power

        rhs = [un.one()] + [un.zero() for _ in range(r_max)]
        beta = alpha
        for j in range(size):
            series = garland_lambda_untwisted(un, beta, 1, r_max)
            z = root_of_unity_power(fa.m, j)
            scaled = [c * _power(z, n) for n, c in enumerate(series)]
            rhs = series_mul(un, rhs, scaled, r_max)
            beta = fa.root_sigma(beta)
        form = "prod_j Lambda_{sigma^j alpha}(zeta^j u)"
        if not literal and fa.is_A2n and fa.is_short(mu):
            rhs = series_mul(un, rhs, rhs, r_max)
            form = "(" + form + ")^2"
    report = []
    for n in range(r_max + 1):
        ok = lhs[n] == rhs[n]
        report.append({"check": "tLvsL", "pass": ok, "detail": f"mu={list(mu)} orbit={size} u^{n} rhs={form} (Gamma read as orbit size)"})
    return report


def _power(z, n: int):
    out = 1
    for _ in range(n):
        out = out * z
    return out


def _embed(tw: Envelope, un: Envelope, ambient_fold: FoldedAlgebra, u: UElement) -> UElement:
    """Image of a twisted element under g[t]^sigma -> g[t]."""
    fa = tw.tca.folded
    amb_to_fold = {}
    for k, vec in enumerate(ambient_fold.vectors):
        (idx,) = vec.keys()
        amb_to_fold[idx] = k
    images: Dict[int, UElement] = {}
    out = un.zero()
    for mono, c in u.terms.items():
        acc = un.one() * c
        for g in mono:
            if g not in images:
                i = tw.gen[g]
                r = tw.tca.basis[i].tdeg
                vec = fa.vectors[tw.tca.folded_index[i]]
                lie = {}
                for idx, coef in vec.items():
                    j = un.tca._by_fold[(amb_to_fold[idx], r)]
                    lie[j] = coef
                images[g] = un.lie(lie)
            acc = acc * images[g]
        out = out + acc
    return out


def _lift(tca: TruncatedCurrentAlgebra, folded_vec: Dict[int, object], tdeg: int) -> Dict[int, object]:
    out = {}
    for k, c in folded_vec.items():
        i = tca._by_fold.get((k, tdeg))
        if i is None:
            raise ValueError("element outside the truncation")
        out[i] = c
    return out


def sl2_embedding_check(fa: FoldedAlgebra, alpha, D: int = 5) -> List[dict]:
    """Check the sl2[t] (or folded A2 current) copy attached to alpha in R_0^+ against its model."""
    alpha = tuple(alpha)
    m = fa.m
    short = fa.is_short(alpha)
    if fa.is_A2n and short:
        model = fold("A2", "order2")
        case = "sl3[t]^tau"
    else:
        model = fold("A1", "id")
        case = "sl2[t]"
    scale = m if (m > 1 and not fa.is_A2n and not short) else 1
    src = build_truncated(model, D)
    tgt = build_truncated(fa, scale * (D - 1) + 1)
    (nu,) = [t.label for t in model.tags if t.kind == "x+" and t.eps == 0]

    def image(i: int) -> Dict[int, object]:
        b = src.basis[i]
        r = scale * b.tdeg
        eps = (-r) % m
        if b.kind == "h":
            return _lift(tgt, fa.h_folded(alpha, eps), r)
        lab = alpha if tuple(b.label) == tuple(nu) else tuple(2 * x for x in alpha)
        k = fa.lookup(b.kind, lab, eps)
        if k is None:
            raise ValueError(f"missing target element {b.kind} {lab} {eps}")
        return _lift(tgt, {k: 1}, r)

    def lin(vec: Dict[int, object]) -> Dict[int, object]:
        out: Dict[int, object] = {}
        for i, c in vec.items():
            for j, d in image(i).items():
                out[j] = out.get(j, 0) + c * d
        return {j: c for j, c in out.items() if c != 0}

    bad = 0
    total = 0
    for i in range(src.dim):
        for j in range(src.dim):
            if src.basis[i].tdeg + src.basis[j].tdeg >= D:
                continue
            total += 1
            lhs = tgt.bracket(image(i), image(j))
            rhs = lin(src.bracket({i: 1}, {j: 1}))
            if any(lhs.get(k, 0) != rhs.get(k, 0) for k in set(lhs) | set(rhs)):
                bad += 1
    return [{"check": "sl2-embedding", "pass": bad == 0, "detail": f"alpha={list(alpha)} model={case} pairs={total} mismatches={bad}"}]


# -- batteries ---------------------------------------------------------------------

def identity_grid(case: str) -> List[Tuple[int, int, int, int]]:
    """Parameter tuples (l, k, r, s) with l, k <= 3 and r, s <= 2 for one case.

    Cases a, b and untwisted skip r = s = 0, where the product leaves an
    h (x) t^0 factor outside U^+.
    """
    out = []
    for l in range(0, 4):
        for k in range(0, 4):
            for r in range(0, 3):
                for s in range(0, 3):
                    if case in ("a", "b", "untwisted"):
                        if l > k or k == 0 or r + s == 0:
                            continue
                        out.append((l, k, r, s))
                    elif case == "c-i":
                        if l == 0 and k >= 1 and s >= 1:
                            out.append((0, k, r, s))
                    elif case == "c-ii":
                        if r == 0 and s == 0 and 1 <= l <= k:
                            out.append((l, k, 0, 0))
                    elif case == "c-iii":
                        if l == 0 and s == 0 and k >= 1:
                            out.append((0, k, r, 0))
    return out


def identity_battery(fa: FoldedAlgebra, cases: Optional[Sequence[str]] = None, literal: bool = False, one_root: bool = True) -> List[dict]:
    """Run the straightening identities over the full parameter grid of each applicable case."""
    report = []
    for case in cases or garland_cases(fa):
        roots = garland_roots(fa, case)
        if not roots:
            continue
        for nu in roots[:1] if one_root else roots:
            for l, k, r, s in identity_grid(case):
                report += verify_garland_identity(fa, case, l, k, r, s, mu=nu, literal=literal)
    return report


def sample_hyperdegree_pairs(env: Envelope, n: int, seed: int = 0, max_power: int = 3):
    rng = random.Random(seed)
    pos = {"x+": [], "x-": []}
    for p, kind in enumerate(env.kind):
        if kind in pos:
            pos[kind].append(p)
    out = []
    while len(out) < n:
        kind = rng.choice(["x+", "x-"])
        g, g2 = rng.choice(pos[kind]), rng.choice(pos[kind])
        if env.tdeg[g] * max_power + env.tdeg[g2] * max_power >= env.tca.D:
            continue
        out.append(((g, rng.randint(1, max_power)), (g2, rng.randint(1, max_power))))
    return out


def random_element(env: Envelope, rng: random.Random, terms: int = 3, length: int = 3) -> UElement:
    out = env.zero()
    n = len(env.gen)
    for _ in range(terms):
        mono = tuple(sorted(rng.randrange(n) for _ in range(rng.randint(0, length))))
        if sum(env.tdeg[g] for g in mono) >= env.tca.D:
            continue
        out = out + UElement(env, {mono: Fraction(rng.randint(-3, 3))})
    return out


def psi_checks(fa: FoldedAlgebra, samples: int = 100, seed: int = 0, D: int = 4) -> List[dict]:
    """psi(psi(u)) = u and psi(uw) = psi(u) psi(w) on random PBW elements."""
    env = envelope_for(fa, D)
    rng = random.Random(seed)
    bad_inv = bad_mul = 0
    for _ in range(samples):
        u = random_element(env, rng)
        w = random_element(env, rng, terms=2, length=2)
        if psi_apply(psi_apply(u)) != u:
            bad_inv += 1
        if psi_apply(u * w) != psi_apply(u) * psi_apply(w):
            bad_mul += 1
    return [
        {"check": "psi-involution", "pass": bad_inv == 0, "detail": f"{bad_inv}/{samples} failures"},
        {"check": "psi-multiplicative", "pass": bad_mul == 0, "detail": f"{bad_mul}/{samples} failures"},
    ]


def psi_lambda_checks(fa: FoldedAlgebra, r_max: int = 3) -> List[dict]:
    """psi(Lambda_r) = -Lambda_r as printed, and psi(Lambda(u)) Lambda(u) = 1."""
    report = []
    for mu in fa.R_eps(0)[:1] if fa.m == 1 else [mu for mu in fa.R_eps(0) if sum(mu) == 1][:1]:
        env = envelope_for(fa, fa.m * r_max + 1)
        lam = garland_lambda(env, mu, r_max)
        img = [psi_apply(c) for c in lam]
        for r in range(1, r_max + 1):
            report.append({"check": "psi-Lambda=-Lambda", "pass": img[r] == -lam[r], "detail": f"mu={list(mu)} r={r}"})
        prod = series_mul(env, img, lam, r_max)
        ok = prod[0] == env.one() and all(c.is_zero() for c in prod[1:])
        report.append({"check": "psi-Lambda-inverse", "pass": ok, "detail": f"mu={list(mu)} psi(Lambda(u)) Lambda(u) = 1 to u^{r_max}"})
    return report
