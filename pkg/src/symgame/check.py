"""Symmetry tests for finite games based on adjacent transpositions.

``T_{mu_r} = I_{k^{r-1}} (x) W_[k] (x) I_{k^{n-r-1}}`` swaps the strategies of
players ``r`` and ``r + 1`` inside a profile index.  A game is symmetric iff
``V_i = V_{mu_r(i)} T_{mu_r}`` for every player ``i`` and every ``r``.  The
minimal test keeps only the chain ``V_i = V_{i+1} T_{mu_i}`` plus equalities on
``V_n`` across each multiset class of the first ``n - 1`` strategies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np
import scipy.sparse as sp

from .basis import multiset_classes, tuple_index
from .game import FiniteGame
from .stp import PermutationMatrix, check_size, identity, kron, perm_apply_row, swap_matrix

__all__ = [
    "CheckReport",
    "DEFAULT_TOL",
    "TransposeOperator",
    "Violation",
    "build_full_system",
    "build_minimal_system",
    "check_full_system",
    "check_minimal",
    "check_proposition1",
    "minimal_system_rows",
    "t_mu",
]

DEFAULT_TOL = 1e-9

METHODS = ("proposition1", "minimal_system", "full_system")


@dataclass(frozen=True)
class TransposeOperator:
    """``T_{mu_r}`` for a game with ``n`` players and ``k`` strategies."""

    r: int
    n: int
    k: int
    perm: PermutationMatrix

    def __matmul__(self, other):
        other_perm = other.perm if isinstance(other, TransposeOperator) else other
        return self.perm @ other_perm


@lru_cache(maxsize=256)
def t_mu(r: int, n: int, k: int) -> TransposeOperator:
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    if not 1 <= r <= n - 1:
        raise ValueError(f"r = {r} out of range 1..{n - 1}")
    perm = kron(kron(identity(k ** (r - 1)), swap_matrix(k)), identity(k ** (n - r - 1)))
    return TransposeOperator(r, n, k, perm)


def mu(r: int, i: int) -> int:
    """Adjacent transposition ``(r, r+1)`` applied to ``i``."""
    if i == r:
        return r + 1
    if i == r + 1:
        return r
    return i


class Violation(NamedTuple):
    """A failed scalar equation ``lhs - rhs = difference``.

    ``lhs`` and ``rhs`` are ``(player, column)`` positions in ``V_G``, both 1-based.
    """

    equation: str
    lhs: tuple[int, int]
    rhs: tuple[int, int]
    difference: object


@dataclass(frozen=True)
class CheckReport:
    symmetric: bool
    method: str
    max_residual: object
    tolerance: float
    violations: tuple[Violation, ...] = field(default=())

    def to_dict(self) -> dict:
        def num(x):
            if isinstance(x, Fraction):
                return int(x) if x.denominator == 1 else str(x)
            return float(x)

        return {
            "symmetric": self.symmetric,
            "method": self.method,
            "max_residual": num(self.max_residual),
            "tolerance": self.tolerance,
            "violations": [
                {"equation": v.equation, "lhs": list(v.lhs), "rhs": list(v.rhs),
                 "difference": num(v.difference)}
                for v in self.violations
            ],
        }


class _Collector:
    def __init__(self, tol: float):
        self.tol = tol
        self.max_residual = 0
        self.violations: list[Violation] = []

    def compare(self, equation, lhs_player, lhs, rhs_player, rhs, rhs_cols, lhs_cols=None) -> None:
        """Record entrywise ``lhs[j] - rhs[j]``; ``*_cols[j]`` are 0-based source columns."""
        diff = lhs - rhs
        mag = np.abs(diff)
        if mag.size == 0:
            return
        top = mag.max()
        if top > self.max_residual:
            self.max_residual = top
        for j in np.flatnonzero(mag > self.tol):
            self.violations.append(
                Violation(
                    equation,
                    (lhs_player, int(j if lhs_cols is None else lhs_cols[j]) + 1),
                    (rhs_player, int(rhs_cols[j]) + 1),
                    diff[j],
                )
            )

    def report(self, method: str) -> CheckReport:
        sym = not self.violations
        return CheckReport(sym, method, self.max_residual, self.tol, tuple(self.violations))


def _zero(g: FiniteGame):
    return Fraction(0) if g.exact else 0.0


def check_proposition1(g: FiniteGame, tol: float = DEFAULT_TOL) -> CheckReport:
    """Test ``V_i = V_{mu_r(i)} T_{mu_r}`` for all players ``i`` and all ``r``."""
    col = _Collector(tol)
    col.max_residual = _zero(g)
    for r in range(1, g.n):
        t = t_mu(r, g.n, g.k).perm
        for i in range(1, g.n + 1):
            j = mu(r, i)
            rhs = perm_apply_row(g.structure_vector(j), t)
            col.compare(f"prop1(i={i},r={r})", i, g.structure_vector(i), j, rhs, t.array)
    return col.report("proposition1")


def check_minimal(g: FiniteGame, tol: float = DEFAULT_TOL) -> CheckReport:
    """Minimal test: chain conditions plus class equalities on the last player's vector.

    Evaluated by index arithmetic; the coefficient matrix is never formed.
    """
    n, k = g.n, g.k
    col = _Collector(tol)
    col.max_residual = _zero(g)
    for i in range(1, n):
        t = t_mu(i, n, k).perm
        rhs = perm_apply_row(g.structure_vector(i + 1), t)
        col.compare(f"chain(i={i})", i, g.structure_vector(i), i + 1, rhs, t.array)
    if n > 2:
        last = g.structure_vector(n)
        lhs_idx, rhs_idx = _class_pairs(n, k)
        col.compare("class", n, last[lhs_idx], n, last[rhs_idx], rhs_idx, lhs_cols=lhs_idx)
    return col.report("minimal_system")


@lru_cache(maxsize=64)
def _class_pairs(n: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    """0-based ``(representative, other)`` column pairs in ``V_n``, one per zeta row."""
    lhs, rhs = [], []
    for cls in multiset_classes(n - 1, k):
        rep = tuple_index(cls.representative, k)
        for q in cls.others:
            qi = tuple_index(q, k)
            for s in range(k):
                lhs.append(rep * k + s)
                rhs.append(qi * k + s)
    lhs_a, rhs_a = np.asarray(lhs, dtype=np.int64), np.asarray(rhs, dtype=np.int64)
    lhs_a.setflags(write=False)
    rhs_a.setflags(write=False)
    return lhs_a, rhs_a


def _row_inverse(p: PermutationMatrix) -> np.ndarray:
    # row j of a permutation matrix has its 1 in column inv[j]
    return p.inverse().array


def _chain_triplets(n: int, k: int):
    kn = k**n
    rows, cols, vals = [], [], []
    ar = np.arange(kn)
    for r in range(1, n):
        base = (r - 1) * kn
        rows += [base + ar, base + ar]
        cols += [(r - 1) * kn + ar, r * kn + _row_inverse(t_mu(r, n, k).perm)]
        vals += [np.ones(kn, dtype=np.int64), -np.ones(kn, dtype=np.int64)]
    return rows, cols, vals


def _assemble(rows, cols, vals, shape) -> sp.csr_matrix:
    mat = sp.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=shape
    ).tocsr()
    mat.sum_duplicates()
    mat.eliminate_zeros()
    return mat


def build_full_system(n: int, k: int) -> sp.csr_matrix:
    """Coefficient matrix whose null space is ``S[n;k]`` (acting on ``V_G`` stacked).

    Block rows ``[... I, -T_{mu_r} ...]`` for ``r = 1..n-1`` followed by
    ``I - T_{mu_j}`` on the last block column for ``j = 1..n-2``.
    """
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    kn = k**n
    shape = ((2 * n - 3) * kn, n * kn)
    check_size(*shape, "full system")
    rows, cols, vals = _chain_triplets(n, k)
    ar = np.arange(kn)
    last = (n - 1) * kn
    for j in range(1, n - 1):
        base = (n - 1 + j - 1) * kn
        rows += [base + ar, base + ar]
        cols += [last + ar, last + _row_inverse(t_mu(j, n, k).perm)]
        vals += [np.ones(kn, dtype=np.int64), -np.ones(kn, dtype=np.int64)]
    return _assemble(rows, cols, vals, shape)


def minimal_system_rows(n: int, k: int) -> int:
    return (n - 1) * k**n + (k ** (n - 1) - math.comb(k + n - 2, n - 1)) * k


def build_minimal_system(n: int, k: int) -> sp.csr_matrix:
    """Full-row-rank test matrix: chain block rows then ``M_X_perp^T (x) I_k`` on ``V_n``."""
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    kn = k**n
    shape = (minimal_system_rows(n, k), n * kn)
    check_size(*shape, "minimal system")
    rows, cols, vals = _chain_triplets(n, k)
    if n > 2:
        lhs, rhs = _class_pairs(n, k)
        base = (n - 1) * kn
        ar = base + np.arange(lhs.size)
        last = (n - 1) * kn
        rows += [ar, ar]
        cols += [last + lhs, last + rhs]
        vals += [np.ones(lhs.size, dtype=np.int64), -np.ones(lhs.size, dtype=np.int64)]
    return _assemble(rows, cols, vals, shape)


def _position(flat: int, kn: int) -> tuple[int, int]:
    return (flat // kn + 1, flat % kn + 1)


def check_full_system(g: FiniteGame, tol: float = DEFAULT_TOL) -> CheckReport:
    """Null-space membership of ``V_G`` in :func:`build_full_system`."""
    a = build_full_system(g.n, g.k).tocoo()
    v = g.vector()
    kn = g.n_profiles
    if g.exact:
        res = np.array([Fraction(0)] * a.shape[0], dtype=object)
        np.add.at(res, a.row, a.data.astype(object) * v[a.col])
    else:
        res = sp.csr_matrix(a) @ v
    col = _Collector(tol)
    col.max_residual = _zero(g)
    if res.size:
        col.max_residual = max(col.max_residual, np.abs(res).max())
    bad = np.flatnonzero(np.abs(res) > tol)
    if bad.size:
        csr = sp.csr_matrix(a)
        for row in bad:
            lo, hi = csr.indptr[row], csr.indptr[row + 1]
            idx, dat = csr.indices[lo:hi], csr.data[lo:hi]
            plus = int(idx[dat > 0][0])
            minus = int(idx[dat < 0][0])
            col.violations.append(
                Violation(f"full(row={row + 1})", _position(plus, kn), _position(minus, kn), res[row])
            )
    return col.report("full_system")
