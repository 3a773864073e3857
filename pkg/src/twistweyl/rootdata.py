"""Finite root systems, Weyl group orbits and Weyl characters.

Roots are integer vectors in the simple-root basis, weights are integer
vectors in the fundamental-weight basis.  The Cartan matrix is the only
bridge between the two; the rational symmetric form is derived from its
symmetrizer and normalized so that long roots have squared length 2.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Sequence, Tuple

Vec = Tuple[int, ...]

FAMILIES = "ABCDEFG"


class RootDataError(ValueError):
    pass


@dataclass(frozen=True)
class CartanLabel:
    family: str
    rank: int

    def __post_init__(self) -> None:
        f, n = self.family, self.rank
        ok = (
            (f == "A" and n >= 1)
            or (f == "B" and n >= 2)
            or (f == "C" and n >= 2)
            or (f == "D" and n >= 3)
            or (f == "E" and n in (6, 7, 8))
            or (f == "F" and n == 4)
            or (f == "G" and n == 2)
        )
        if not ok:
            raise RootDataError(f"invalid Cartan type {f}{n}")

    @classmethod
    def parse(cls, text: str) -> "CartanLabel":
        text = text.strip().upper()
        if len(text) < 2 or text[0] not in FAMILIES or not text[1:].isdigit():
            raise RootDataError(f"cannot parse Cartan type {text!r}")
        return cls(text[0], int(text[1:]))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def cartan_matrix(label: CartanLabel) -> List[List[int]]:
    """Bourbaki-numbered Cartan matrix, A[i][j] = <alpha_j, alpha_i^vee>."""
    f, n = label.family, label.rank
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i: int, j: int, aij: int = -1, aji: int = -1) -> None:
        A[i][j] = aij
        A[j][i] = aji

    if f in "ABCD":
        for i in range(n - 1):
            link(i, i + 1)
        if f == "B":
            # alpha_n short
            A[n - 1][n - 2] = -2
        elif f == "C":
            # alpha_n long
            A[n - 2][n - 1] = -2
        elif f == "D":
            A[n - 2][n - 1] = A[n - 1][n - 2] = 0
            link(n - 3, n - 1)
    elif f == "E":
        link(0, 2)
        link(1, 3)
        link(2, 3)
        for i in range(3, n - 1):
            link(i, i + 1)
    elif f == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif f == "G":
        # alpha_1 short, alpha_2 long
        link(0, 1, -3, -1)
    return A


@dataclass(frozen=True)
class RootSystem:
    """Positive roots, coroot pairings and the normalized form of a finite type."""

    cartan: Tuple[Tuple[int, ...], ...]
    label: CartanLabel | None = None
    positive_roots: Tuple[Vec, ...] = field(default=(), compare=False)

    @property
    def rank(self) -> int:
        return len(self.cartan)

    # -- symmetric form -------------------------------------------------
    @cached_property
    def root_lengths(self) -> Tuple[Fraction, ...]:
        """(alpha_i, alpha_i) for each simple root, long roots having length 2."""
        n = self.rank
        d: List[Fraction | None] = [None] * n
        d[0] = Fraction(1)
        stack = [0]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and self.cartan[i][j] != 0 and d[j] is None:
                    # d_i A_ij = d_j A_ji
                    d[j] = d[i] * self.cartan[i][j] / self.cartan[j][i]
                    stack.append(j)
        if any(x is None for x in d):
            raise RootDataError("Cartan matrix is not connected")
        top = max(d)  # type: ignore[type-var]
        return tuple(2 * x / top for x in d)  # type: ignore[operator]

    def form_roots(self, a: Sequence[int], b: Sequence[int]) -> Fraction:
        """(a, b) for a, b in simple-root coordinates."""
        L = self.root_lengths
        s = Fraction(0)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        # (alpha_i, alpha_j) = A_ij (alpha_i, alpha_i) / 2
                        s += ai * bj * self.cartan[i][j] * L[i] / 2
        return s

    @cached_property
    def inverse_cartan(self) -> Tuple[Tuple[Fraction, ...], ...]:
        n = self.rank
        M = [[Fraction(self.cartan[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        for c in range(n):
            p = next(r for r in range(c, n) if M[r][c] != 0)
            M[c], M[p] = M[p], M[c]
            piv = M[c][c]
            M[c] = [x / piv for x in M[c]]
            for r in range(n):
                if r != c and M[r][c] != 0:
                    f = M[r][c]
                    M[r] = [x - f * y for x, y in zip(M[r], M[c])]
        return tuple(tuple(row[n:]) for row in M)

    def weight_to_roots(self, w: Sequence[int]) -> Tuple[Fraction, ...]:
        """Fundamental-weight coordinates to (rational) simple-root coordinates."""
        # omega_i = sum_j (A^{-1})_{ji} alpha_j since alpha_j = sum_i A_ij omega_i
        inv = self.inverse_cartan
        n = self.rank
        return tuple(sum((inv[j][i] * w[i] for i in range(n)), Fraction(0)) for j in range(n))

    def root_to_weight(self, r: Sequence[int]) -> Vec:
        n = self.rank
        return tuple(sum(self.cartan[i][j] * r[j] for j in range(n)) for i in range(n))

    def form_weights(self, a: Sequence[int], b: Sequence[int]) -> Fraction:
        # (omega-coords a, root-coords of b): (omega_i, alpha_j) = delta_ij d_j
        rb = self.weight_to_roots(b)
        L = self.root_lengths
        return sum((a[i] * rb[i] * L[i] / 2 for i in range(self.rank)), Fraction(0))

    # -- roots ------------------------------------------------------------
    def pairing(self, root: Sequence[int], i: int) -> int:
        """<root, alpha_i^vee> for a root in simple-root coordinates."""
        return sum(root[j] * self.cartan[i][j] for j in range(self.rank))

    @cached_property
    def roots(self) -> Tuple[Vec, ...]:
        return self.positive_roots + tuple(tuple(-x for x in r) for r in self.positive_roots)

    @cached_property
    def root_index(self) -> Dict[Vec, int]:
        return {r: k for k, r in enumerate(self.positive_roots)}

    @cached_property
    def highest_root(self) -> Vec:
        return max(self.positive_roots, key=lambda r: (sum(r), r))

    def is_long(self, root: Sequence[int]) -> bool:
        return self.form_roots(root, root) == 2

    @cached_property
    def lacing(self) -> int:
        short = min(self.root_lengths)
        return int(2 / short)

    def dual_lacing(self, root: Sequence[int]) -> int:
        """r^vee_alpha = 2 / (alpha, alpha): 1 for long roots, r^vee for short ones."""
        return int(2 / self.form_roots(root, root))

    def coroot(self, root: Sequence[int]) -> Tuple[int, ...]:
        """h_alpha as integer combination of the simple coroots h_i."""
        L = self.root_lengths
        norm = self.form_roots(root, root)
        out = []
        for i, c in enumerate(root):
            v = Fraction(c) * L[i] / norm
            if v.denominator != 1:
                raise RootDataError("non-integral coroot")
            out.append(int(v))
        return tuple(out)

    def weight_on_coroot(self, w: Sequence[int], root: Sequence[int]) -> int:
        """lambda(h_alpha) for a weight in fundamental coordinates."""
        return sum(a * b for a, b in zip(w, self.coroot(root)))

    def height(self, root: Sequence[int]) -> int:
        return sum(root)

    @property
    def dim(self) -> int:
        return 2 * len(self.positive_roots) + self.rank


def _closure(cartan: Sequence[Sequence[int]]) -> Tuple[Vec, ...]:
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simple)
    layer = list(simple)
    while layer:
        nxt = []
        for beta in layer:
            for i in range(n):
                # p = how far the i-string extends downwards from beta
                p = 0
                down = list(beta)
                while True:
                    down[i] -= 1
                    if tuple(down) in found:
                        p += 1
                    else:
                        break
                q = p - sum(beta[j] * cartan[i][j] for j in range(n))
                if q > 0:
                    up = list(beta)
                    up[i] += 1
                    t = tuple(up)
                    if t not in found:
                        found.add(t)
                        nxt.append(t)
        layer = nxt
    return tuple(sorted(found, key=lambda r: (sum(r), tuple(-x for x in r))))


def build_root_system(label: CartanLabel | str) -> RootSystem:
    if isinstance(label, str):
        label = CartanLabel.parse(label)
    A = cartan_matrix(label)
    return root_system_from_cartan(A, label)


def root_system_from_cartan(A: Sequence[Sequence[int]], label: CartanLabel | None = None) -> RootSystem:
    cart = tuple(tuple(int(x) for x in row) for row in A)
    return RootSystem(cart, label, _closure(cart))


# -- Weyl group ------------------------------------------------------------

def reflect(rs: RootSystem, w: Sequence[int], i: int) -> Vec:
    """Simple reflection s_i on a weight in fundamental coordinates."""
    k = w[i]
    return tuple(w[j] - k * rs.cartan[j][i] for j in range(rs.rank))


def weyl_orbit(rs: RootSystem, mu: Sequence[int]) -> set:
    start = tuple(mu)
    seen = {start}
    todo = [start]
    while todo:
        w = todo.pop()
        for i in range(rs.rank):
            if w[i] != 0:
                v = reflect(rs, w, i)
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
    return seen


def dominant_representative(rs: RootSystem, mu: Sequence[int]) -> Vec:
    w = tuple(mu)
    while True:
        i = next((j for j in range(rs.rank) if w[j] < 0), None)
        if i is None:
            return w
        w = reflect(rs, w, i)


def is_dominant(w: Sequence[int]) -> bool:
    return all(x >= 0 for x in w)


def weyl_dimension(rs: RootSystem, lam: Sequence[int]) -> int:
    rho = (1,) * rs.rank
    num = Fraction(1)
    for a in rs.positive_roots:
        lr = [x + y for x, y in zip(lam, rho)]
        num *= rs.form_weights(lr, rs.root_to_weight(a)) / rs.form_weights(rho, rs.root_to_weight(a))
    assert num.denominator == 1
    return int(num)


def dominant_weights_below(rs: RootSystem, lam: Sequence[int]) -> List[Vec]:
    """Dominant mu with lam - mu in Q^+."""
    lam = tuple(lam)
    out = {lam}
    todo = [lam]
    pos_w = [rs.root_to_weight(a) for a in rs.positive_roots]
    while todo:
        mu = todo.pop()
        for a in pos_w:
            nu = tuple(x - y for x, y in zip(mu, a))
            if is_dominant(nu) and nu not in out:
                out.add(nu)
                todo.append(nu)
    return sorted(out, key=lambda w: sum(rs.weight_to_roots(lam)) - sum(rs.weight_to_roots(w)))


def weyl_character(rs: RootSystem, lam: Sequence[int]) -> Dict[Vec, int]:
    """Character of the irreducible module of highest weight lam (Freudenthal)."""
    lam = tuple(lam)
    if not is_dominant(lam):
        raise RootDataError(f"weight {lam} is not dominant")
    rho = (1,) * rs.rank
    pos_w = [rs.root_to_weight(a) for a in rs.positive_roots]

    def norm(w: Sequence[int]) -> Fraction:
        return rs.form_weights(w, w)

    lr = tuple(x + y for x, y in zip(lam, rho))
    c_lam = norm(lr)
    dom = dominant_weights_below(rs, lam)
    mult: Dict[Vec, int] = {}

    def m(w: Vec) -> int:
        return mult.get(dominant_representative(rs, w), 0)

    for mu in dom:
        if mu == lam:
            mult[mu] = 1
            continue
        mr = tuple(x + y for x, y in zip(mu, rho))
        denom = c_lam - norm(mr)
        total = Fraction(0)
        for a in pos_w:
            k = 1
            while True:
                nu = tuple(x + k * y for x, y in zip(mu, a))
                c = m(nu)
                if c == 0 and not _below(rs, nu, lam):
                    break
                total += c * rs.form_weights(nu, a)
                k += 1
        val = 2 * total / denom
        assert val.denominator == 1
        mult[mu] = int(val)
    out: Dict[Vec, int] = {}
    for mu, c in mult.items():
        if c:
            for nu in weyl_orbit(rs, mu):
                out[nu] = c
    return out


def _below(rs: RootSystem, nu: Sequence[int], lam: Sequence[int]) -> bool:
    diff = rs.weight_to_roots([a - b for a, b in zip(lam, nu)])
    return all(x >= 0 for x in diff)


def weights_of_irrep(rs: RootSystem, lam: Sequence[int]) -> set:
    """Weights of W(lam): mu with w mu <= lam for all w."""
    return set(weyl_character(rs, lam))


def identify_type(cartan: Sequence[Sequence[int]], prefer: str | None = None) -> Tuple[CartanLabel, Tuple[int, ...]]:
    """Find (label, perm) with cartan[i][j] == standard[perm[i]][perm[j]].

    ``prefer`` names a family tried first (B2 and C2 share a Cartan matrix).
    """
    import itertools

    n = len(cartan)
    cands = []
    families = ([prefer] if prefer else []) + [f for f in FAMILIES if f != prefer]
    for f in families:
        try:
            cands.append(CartanLabel(f, n))
        except RootDataError:
            pass
    for lab in cands:
        std = cartan_matrix(lab)
        # match by degree/edge multiset before brute force
        for perm in itertools.permutations(range(n)):
            if all(cartan[i][j] == std[perm[i]][perm[j]] for i in range(n) for j in range(n)):
                return lab, perm
    raise RootDataError("unrecognized Cartan matrix")
