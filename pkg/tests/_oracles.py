"""Reference computations that share no code with the package under test."""

from __future__ import annotations

from fractions import Fraction
from itertools import product

import numpy as np


def rational_rank(mat) -> int:
    """Rank over Q by sparse Gaussian elimination on dict rows of Fractions."""
    if hasattr(mat, "tocoo"):
        coo = mat.tocoo()
        rows: dict[int, dict[int, Fraction]] = {}
        for i, j, v in zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()):
            if v:
                rows.setdefault(i, {})[j] = rows.get(i, {}).get(j, Fraction(0)) + Fraction(v)
        work = [r for r in rows.values() if any(r.values())]
    else:
        arr = np.asarray(mat)
        work = []
        for row in arr:
            d = {j: Fraction(x) for j, x in enumerate(row.tolist()) if x != 0}
            if d:
                work.append(d)
    pivots: dict[int, dict[int, Fraction]] = {}
    for row in work:
        row = {j: v for j, v in row.items() if v != 0}
        while row:
            col = min(row)
            piv = pivots.get(col)
            if piv is None:
                pivots[col] = row
                break
            f = row[col] / piv[col]
            for j, v in piv.items():
                nv = row.get(j, Fraction(0)) - f * v
                if nv == 0:
                    row.pop(j, None)
                else:
                    row[j] = nv
    return len(pivots)


def dense_kron(a, b) -> np.ndarray:
    """Kronecker product by its entry formula."""
    a = np.asarray(a)
    b = np.asarray(b)
    m, n = a.shape
    p, q = b.shape
    out = np.zeros((m * p, n * q), dtype=np.result_type(a, b))
    for i, j, r, s in product(range(m), range(n), range(p), range(q)):
        out[i * p + r, j * q + s] = a[i, j] * b[r, s]
    return out


def swap_by_definition(m: int, n: int) -> np.ndarray:
    """Swap matrix from its double-index labeling."""
    cols = [(i, j) for i in range(1, m + 1) for j in range(1, n + 1)]
    rows = [(i, j) for j in range(1, n + 1) for i in range(1, m + 1)]
    out = np.zeros((m * n, m * n), dtype=np.int64)
    for c, (i, j) in enumerate(cols):
        for r, (big_i, big_j) in enumerate(rows):
            out[r, c] = int(big_i == i and big_j == j)
    return out


def delta_dense(m: int, image) -> np.ndarray:
    out = np.zeros((m, len(image)), dtype=np.int64)
    for j, i in enumerate(image):
        out[i - 1, j] = 1
    return out


def stp_by_definition(a, b) -> np.ndarray:
    from math import lcm

    a = np.asarray(a)
    b = np.asarray(b)
    n = a.shape[1]
    p = b.shape[0]
    t = lcm(n, p)
    return dense_kron(a, np.eye(t // n, dtype=np.int64)) @ dense_kron(b, np.eye(t // p, dtype=np.int64))


def family_matrix(rows: list[str]) -> np.ndarray:
    """Matrix whose columns span the games ``sum_j c_j * [pattern == j]``.

    ``rows`` are whitespace-separated parameter names like ``"a1 a3 a3 ..."``.
    """
    cells = [r.split() for r in rows]
    names = sorted({c for row in cells for c in row}, key=lambda s: (s[0], int(s[1:])))
    flat = [c for row in cells for c in row]
    out = np.zeros((len(flat), len(names)), dtype=np.int64)
    for pos, c in enumerate(flat):
        out[pos, names.index(c)] = 1
    return out


# Symmetric payoff patterns as printed for G[3;2] and G[4;2]
EXAMPLE1_ROWS = [
    "a1 a3 a3 a5 a2 a4 a4 a6",
    "a1 a3 a2 a4 a3 a5 a4 a6",
    "a1 a2 a3 a4 a3 a4 a5 a6",
]
EXAMPLE2_ROWS = [
    "b1 b3 b3 b5 b3 b5 b5 b7 b2 b4 b4 b6 b4 b6 b6 b8",
    "b1 b3 b3 b5 b2 b4 b4 b6 b3 b5 b5 b7 b4 b6 b6 b8",
    "b1 b3 b2 b4 b3 b5 b4 b6 b3 b5 b4 b6 b5 b7 b6 b8",
    "b1 b2 b3 b4 b3 b4 b5 b6 b3 b4 b5 b6 b5 b6 b7 b8",
]


def example_game(rows: list[str], values) -> list[list[int]]:
    """Instantiate a printed pattern with concrete parameter values (1-based names)."""
    return [[values[int(c[1:]) - 1] for c in r.split()] for r in rows]
