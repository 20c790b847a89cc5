"""Bases of the symmetric game subspace ``S[n;k]`` and related constructions.

The ``eta`` vectors are indicator vectors of the multiset classes of index
tuples ``(p_1, ..., p_{n-1})``; they span the vectors invariant under every
adjacent index swap.  The ``zeta`` vectors (``+1`` at the sorted representative,
``-1`` at another member of its class) span the orthogonal complement.

A symmetric game is fully determined by the last player's structure vector,
which is invariant under permutations of the first ``n - 1`` strategies.  The
basis stacks ``B_s (M_X (x) I_k)`` for ``s = 1..n`` where
``B_s = I_{k^{s-1}} (x) W_[k^{n-s}, k]`` and ``B_n`` is the identity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, permutations

import numpy as np
import scipy.sparse as sp

from .game import FiniteGame
from .stp import check_size, identity, kron, swap_matrix

__all__ = [
    "MultisetClass",
    "SymSubspaceBasis",
    "dimension",
    "eta_basis",
    "multiset_classes",
    "project_symmetric",
    "random_symmetric_game",
    "symmetric_subspace_basis",
    "tuple_index",
    "zeta_complement",
]


@dataclass(frozen=True)
class MultisetClass:
    """All distinct rearrangements of a sorted tuple of strategies."""

    representative: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]

    @property
    def others(self) -> tuple[tuple[int, ...], ...]:
        """Members other than the representative, in lexicographic order."""
        return tuple(m for m in self.members if m != self.representative)

    @property
    def label(self) -> str:
        sep = "" if all(p < 10 for p in self.representative) else ","
        return sep.join(str(p) for p in self.representative)


def tuple_index(t: tuple[int, ...], k: int) -> int:
    """0-based lexicographic position of a 1-based strategy tuple."""
    j = 0
    for p in t:
        j = j * k + (p - 1)
    return j


@lru_cache(maxsize=64)
def multiset_classes(length: int, k: int) -> tuple[MultisetClass, ...]:
    """Classes of ``length``-tuples over ``1..k``, ordered by sorted representative.

    There are ``C(k + length - 1, length)`` of them.
    """
    if length < 1 or k < 1:
        raise ValueError("length and k must be positive")
    out = []
    for rep in combinations_with_replacement(range(1, k + 1), length):
        members = tuple(sorted(set(permutations(rep))))
        out.append(MultisetClass(rep, members))
    return tuple(out)


def _n_classes(n: int, k: int) -> int:
    return math.comb(k + n - 2, n - 1)


def dimension(n: int, k: int) -> int:
    """Dimension ``k * C(k + n - 2, n - 1)`` of ``S[n;k]``."""
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    return k * _n_classes(n, k)


def eta_basis(n: int, k: int) -> np.ndarray:
    """Indicator matrix ``M_X`` of shape ``(k**(n-1), C(k+n-2, n-1))``."""
    if n < 2:
        raise ValueError("need n >= 2")
    classes = multiset_classes(n - 1, k)
    check_size(k ** (n - 1), len(classes), "eta basis")
    out = np.zeros((k ** (n - 1), len(classes)), dtype=np.int64)
    for c, cls in enumerate(classes):
        for m in cls.members:
            out[tuple_index(m, k), c] = 1
    return out


def zeta_complement(n: int, k: int) -> np.ndarray:
    """Difference matrix ``M_X_perp`` of shape ``(k**(n-1), k**(n-1) - C(k+n-2, n-1))``."""
    if n < 2:
        raise ValueError("need n >= 2")
    classes = multiset_classes(n - 1, k)
    cols = k ** (n - 1) - len(classes)
    check_size(k ** (n - 1), cols, "zeta complement")
    out = np.zeros((k ** (n - 1), cols), dtype=np.int64)
    c = 0
    for cls in classes:
        rep = tuple_index(cls.representative, k)
        for q in cls.others:
            out[rep, c] = 1
            out[tuple_index(q, k), c] = -1
            c += 1
    return out


def block_permutation(s: int, n: int, k: int):
    """``I_{k^{s-1}} (x) W_[k^{n-s}, k]`` for ``s < n``; identity for ``s = n``."""
    if not 1 <= s <= n:
        raise ValueError(f"block index {s} out of range 1..{n}")
    if s == n:
        return identity(k**n)
    return kron(identity(k ** (s - 1)), swap_matrix(k ** (n - s), k))


@dataclass(frozen=True, eq=False)
class SymSubspaceBasis:
    """0/1 basis of ``S[n;k]``; column ``j`` is labeled by ``class_index[j]``.

    ``basis`` is a sparse ``(n * k**n, dim)`` matrix.  Reshaping a column to
    ``(n, k**n)`` gives the structure vectors of a symmetric game.
    """

    n: int
    k: int
    basis: sp.csc_matrix
    class_index: tuple[tuple[MultisetClass, int], ...]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def to_dense(self) -> np.ndarray:
        check_size(*self.basis.shape, "basis")
        return self.basis.toarray()

    def column_game(self, j: int) -> FiniteGame:
        """The 0-based ``j``-th basis vector as an exact game."""
        col = self.basis[:, j].toarray().ravel()
        return FiniteGame.from_vector(col.astype(object), self.n, self.k, exact=True)

    def labels(self) -> list[str]:
        return [f"{cls.label}|{s}" for cls, s in self.class_index]

    def pattern(self) -> np.ndarray:
        """``(n, k**n)`` array of 1-based column numbers: which coefficient fills each entry."""
        coo = self.basis.tocoo()
        out = np.zeros(self.basis.shape[0], dtype=np.int64)
        out[coo.row] = coo.col + 1
        return out.reshape(self.n, self.k**self.n)

    def class_index_json(self) -> list[dict]:
        return [
            {"column": j + 1, "representative": list(cls.representative), "strategy": s,
             "members": [list(m) for m in cls.members]}
            for j, (cls, s) in enumerate(self.class_index)
        ]


def symmetric_subspace_basis(n: int, k: int) -> SymSubspaceBasis:
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    check_size(n * k**n, dimension(n, k), "symmetric subspace basis")
    return _build_basis(n, k)


@lru_cache(maxsize=32)
def _build_basis(n: int, k: int) -> SymSubspaceBasis:
    kn = k**n
    dim = dimension(n, k)
    classes = multiset_classes(n - 1, k)

    # last block: M_X (x) I_k, column (c, s) has ones at rows (member, s)
    base_rows, base_cols = [], []
    for c, cls in enumerate(classes):
        for m in cls.members:
            a = tuple_index(m, k)
            for s in range(k):
                base_rows.append(a * k + s)
                base_cols.append(c * k + s)
    base_rows = np.asarray(base_rows, dtype=np.int64)
    base_cols = np.asarray(base_cols, dtype=np.int64)

    rows, cols = [], []
    for s in range(1, n + 1):
        perm = block_permutation(s, n, k)
        # P e_j = e_{image[j]}
        rows.append((s - 1) * kn + perm.array[base_rows])
        cols.append(base_cols)
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    mat = sp.csc_matrix((np.ones(rows.size, dtype=np.int64), (rows, cols)), shape=(n * kn, dim))
    mat.sort_indices()
    for arr in (mat.data, mat.indices, mat.indptr):
        arr.setflags(write=False)
    index = tuple((cls, s) for cls in classes for s in range(1, k + 1))
    return SymSubspaceBasis(n, k, mat, index)


def project_symmetric(g: FiniteGame) -> tuple[FiniteGame, float]:
    """Orthogonal projection of ``g`` onto ``S[n;k]`` and the Euclidean distance to it.

    Basis columns have disjoint supports, so the Gram matrix is diagonal and the
    least-squares coefficients are orbit averages.  Exact games are projected in
    rational arithmetic.
    """
    b = symmetric_subspace_basis(g.n, g.k)
    v = g.vector()
    coo = b.basis.tocoo()
    counts = np.bincount(coo.col, minlength=b.dim)
    if g.exact:
        sums = np.array([Fraction(0)] * b.dim, dtype=object)
        np.add.at(sums, coo.col, v[coo.row])
        coef = np.array([sums[j] / int(counts[j]) for j in range(b.dim)], dtype=object)
        proj = np.empty(v.size, dtype=object)
        proj[coo.row] = coef[coo.col]
        resid = v - proj
        dist2 = sum((x * x for x in resid), Fraction(0))
        dist = math.sqrt(dist2)
    else:
        sums = np.bincount(coo.col, weights=v[coo.row], minlength=b.dim)
        coef = sums / counts
        proj = np.empty(v.size, dtype=np.float64)
        proj[coo.row] = coef[coo.col]
        dist = float(np.linalg.norm(v - proj))
    return FiniteGame.from_vector(proj, g.n, g.k, exact=g.exact), dist


def random_symmetric_game(
    n: int,
    k: int,
    seed: int | None = None,
    low: float = -10,
    high: float = 10,
    integer: bool = True,
    coefficients=None,
) -> FiniteGame:
    """Random point of ``S[n;k]``: the basis times a coefficient vector.

    Coefficients are drawn uniformly from ``[low, high]`` (integers when
    ``integer`` is true, giving an exact game) unless given explicitly.
    """
    b = symmetric_subspace_basis(n, k)
    if coefficients is None:
        rng = np.random.default_rng(seed)
        if integer:
            coef = rng.integers(int(low), int(high), size=b.dim, endpoint=True)
            coef = np.array([Fraction(int(c)) for c in coef], dtype=object)
        else:
            coef = rng.uniform(low, high, size=b.dim)
    else:
        coef = np.asarray(coefficients)
        if coef.shape != (b.dim,):
            raise ValueError(f"expected {b.dim} coefficients, got shape {coef.shape}")
        integer = coef.dtype == object or np.issubdtype(coef.dtype, np.integer)
        if integer:
            coef = np.array([Fraction(c) for c in coef.tolist()], dtype=object)
    # every row of the basis has exactly one nonzero, so the product is a gather
    coo = b.basis.tocoo()
    vec = np.empty(b.basis.shape[0], dtype=coef.dtype)
    vec[coo.row] = coef[coo.col]
    return FiniteGame.from_vector(vec, n, k, exact=bool(integer))
