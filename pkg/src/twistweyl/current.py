"""The twisted current algebra g[t]^sigma truncated below a t-degree cutoff."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Tuple

from .folding import FoldedAlgebra


@dataclass(frozen=True)
class CurrentBasisElement:
    kind: str  # "x+", "x-", "h"
    label: object  # g0 root for x, I0 index for h
    tdeg: int

    def __str__(self) -> str:
        lab = ",".join(str(c) for c in self.label) if isinstance(self.label, tuple) else str(self.label)
        return f"{self.kind}[{lab}]t^{self.tdeg}"


class TruncatedCurrentAlgebra:
    """g[t]^sigma / t^D g[t]^sigma with basis x (x) t^r, eps(x) = -r mod m."""

    def __init__(self, folded: FoldedAlgebra, D: int):
        if D <= 0:
            raise ValueError("cutoff D must be positive")
        self.folded = folded
        self.D = D
        m = folded.m
        basis: List[CurrentBasisElement] = []
        fidx: List[int] = []
        for r in range(D):
            eps = (-r) % m
            for k, tag in enumerate(folded.tags):
                if tag.eps == eps:
                    basis.append(CurrentBasisElement(tag.kind, tag.label, r))
                    fidx.append(k)
        self.basis = tuple(basis)
        self.folded_index = tuple(fidx)
        self.index = {b: i for i, b in enumerate(basis)}
        self._by_fold = {(k, b.tdeg): i for i, (k, b) in enumerate(zip(fidx, basis))}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def element(self, kind: str, label, tdeg: int) -> Optional[int]:
        label = tuple(label) if kind != "h" else label
        return self.index.get(CurrentBasisElement(kind, label, tdeg))

    def grade_basis(self, r: int) -> Tuple[int, ...]:
        return tuple(i for i, b in enumerate(self.basis) if b.tdeg == r)

    def weight(self, i: int):
        return self.folded.weight(self.folded_index[i])

    def eps(self, i: int) -> int:
        return self.folded.tags[self.folded_index[i]].eps

    @cached_property
    def table(self) -> Dict[Tuple[int, int], Tuple[Tuple[int, object], ...]]:
        ftab = self.folded.table
        out = {}
        for i, a in enumerate(self.basis):
            for j, b in enumerate(self.basis):
                r = a.tdeg + b.tdeg
                if r >= self.D:
                    continue
                terms = ftab.get((self.folded_index[i], self.folded_index[j]))
                if terms:
                    out[(i, j)] = tuple((self._by_fold[(k, r)], c) for k, c in terms)
        return out

    def bracket(self, u: Dict[int, object], v: Dict[int, object]) -> Dict[int, object]:
        out: Dict[int, object] = {}
        tab = self.table
        for i, a in u.items():
            for j, b in v.items():
                for k, c in tab.get((i, j), ()):
                    out[k] = out.get(k, 0) + a * b * c
        return {k: c for k, c in out.items() if c != 0}


def build_truncated(folded: FoldedAlgebra, D: int) -> TruncatedCurrentAlgebra:
    return TruncatedCurrentAlgebra(folded, D)


def current_bracket(tca: TruncatedCurrentAlgebra, a: CurrentBasisElement, b: CurrentBasisElement) -> Dict[CurrentBasisElement, object]:
    res = tca.bracket({tca.index[a]: 1}, {tca.index[b]: 1})
    return {tca.basis[k]: c for k, c in res.items()}


def jacobi_defects(tca: TruncatedCurrentAlgebra, limit: Optional[int] = None) -> List[Tuple[int, int, int]]:
    bad = []
    n = tca.dim
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                if tca.basis[i].tdeg + tca.basis[j].tdeg + tca.basis[k].tdeg >= tca.D:
                    continue
                ei, ej, ek = {i: 1}, {j: 1}, {k: 1}
                tot: dict = {}
                for x, y, z in ((ei, ej, ek), (ej, ek, ei), (ek, ei, ej)):
                    for key, c in tca.bracket(x, tca.bracket(y, z)).items():
                        tot[key] = tot.get(key, 0) + c
                if any(c != 0 for c in tot.values()):
                    bad.append((i, j, k))
                count += 1
                if limit is not None and count >= limit:
                    return bad
    return bad
