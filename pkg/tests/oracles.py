"""Independent reference values, computed without the package under test."""
from __future__ import annotations

from itertools import combinations
from math import gcd
from typing import Dict, List, Sequence, Tuple

# dim and Cartan type of the fixed-point subalgebra for each folding
FOLD_TYPES = {
    ("A3", "order2"): ("C2", 10),
    ("A5", "order2"): ("C3", 21),
    ("D4", "order2"): ("B3", 21),
    ("D4", "order3"): ("G2", 14),
    ("A2", "order2"): ("A1", 3),
    ("A4", "order2"): ("B2", 10),
}

# dim g = sum over eps of dim g_eps
AMBIENT_DIM = {"A1": 3, "A2": 8, "A3": 15, "A4": 24, "A5": 35, "D4": 28}


def q_binomial(n: int, k: int) -> Dict[int, int]:
    """Gaussian binomial [n choose k]_q as {power: coeff}."""
    if k < 0 or k > n:
        return {}
    # dynamic programme over [n,k] = [n-1,k-1] + q^k [n-1,k]
    table = {(0, 0): {0: 1}}
    for a in range(1, n + 1):
        for b in range(0, min(a, k) + 1):
            out: Dict[int, int] = {}
            for p, c in table.get((a - 1, b - 1), {}).items():
                out[p] = out.get(p, 0) + c
            for p, c in table.get((a - 1, b), {}).items():
                out[p + b] = out.get(p + b, 0) + c
            table[(a, b)] = out
    return table[(n, k)]


def sl2_weyl_character(m: int) -> Dict[Tuple[Tuple[int, ...], int], int]:
    """Graded character of the local graded sl2 Weyl module of highest weight m:
    weight m-2j carries the q-binomial [m choose j]."""
    out = {}
    for j in range(m + 1):
        for p, c in q_binomial(m, j).items():
            out[((m - 2 * j,), p)] = c
    return out


def determinant(M: Sequence[Sequence[int]]) -> int:
    n = len(M)
    if n == 0:
        return 1
    if n == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * determinant([row[:j] + row[j + 1:] for row in M[1:]]) for j in range(n))


def determinantal_divisors(M: Sequence[Sequence[int]]) -> List[int]:
    """Elementary divisors from gcds of k x k minors (small matrices only)."""
    rows, cols = len(M), len(M[0])
    d = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for R in combinations(range(rows), k):
            for C in combinations(range(cols), k):
                g = gcd(g, determinant([[M[i][j] for j in C] for i in R]))
        if g == 0:
            break
        d.append(g)
    return [d[i] // d[i - 1] for i in range(1, len(d))]
