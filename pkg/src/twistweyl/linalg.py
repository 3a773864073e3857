"""Exact sparse row reduction and integer elementary divisors."""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Generic, Hashable, Iterable, List, Optional, Sequence, TypeVar

K = TypeVar("K", bound=Hashable)
SparseVec = Dict[K, Fraction]


def _coerce(c):
    return Fraction(c) if isinstance(c, int) else c


class Echelon(Generic[K]):
    """Incrementally maintained row-echelon basis of a subspace of a sparse vector space.

    Each stored row has pivot equal to its largest key under `order` and
    pivot coefficient 1, so reduction never reintroduces an eliminated pivot.
    """

    def __init__(self, order=None):
        self._order = order or (lambda k: k)
        self.rows: Dict[K, SparseVec] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: Dict[K, object]) -> SparseVec:
        v = {k: _coerce(c) for k, c in v.items() if c != 0}
        rows = self.rows
        order = self._order
        while True:
            hits = [k for k in v if k in rows]
            if not hits:
                return v
            p = max(hits, key=order)
            c = v[p]
            for k, x in rows[p].items():
                y = v.get(k, 0) - c * x
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)

    def add(self, v: Dict[K, object]) -> Optional[SparseVec]:
        """Insert v; return the new reduced row, or None if v was already in the span."""
        r = self.reduce(v)
        if not r:
            return None
        p = max(r, key=self._order)
        c = r[p]
        r = {k: x / c for k, x in r.items()}
        self.rows[p] = r
        return r

    def contains(self, v: Dict[K, object]) -> bool:
        return not self.reduce(v)

    def reduced_rows(self) -> Dict[K, SparseVec]:
        """Fully reduced rows: no row contains another row's pivot."""
        out: Dict[K, SparseVec] = {}
        for p in sorted(self.rows, key=self._order):
            row = dict(self.rows[p])
            for q in list(row):
                if q != p and q in out:
                    c = row[q]
                    for k, x in out[q].items():
                        y = row.get(k, 0) - c * x
                        if y:
                            row[k] = y
                        else:
                            row.pop(k, None)
            for q, r in out.items():
                c = r.get(p)
                if c:
                    for k, x in row.items():
                        y = r.get(k, 0) - c * x
                        if y:
                            r[k] = y
                        else:
                            r.pop(k, None)
            out[p] = row
        return out


def rank(vectors: Iterable[Dict[K, object]], order=None) -> int:
    e: Echelon = Echelon(order)
    for v in vectors:
        e.add(v)
    return len(e)


def elementary_divisors(rows: Sequence[Sequence[int]]) -> List[int]:
    """Nonzero invariant factors of an integer matrix, in divisibility order."""
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import invariant_factors

    if not rows or not rows[0]:
        return []
    facs = invariant_factors(Matrix(rows), domain=ZZ)
    return [abs(int(f)) for f in facs if f != 0]
