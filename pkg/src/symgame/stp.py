"""Kronecker and left semi-tensor products, swap matrices, and permutation matrices.

Permutation matrices are kept in compact delta form: ``delta_m[i_1 ... i_m]``
stands for the matrix whose ``j``-th column is the ``i_j``-th standard basis
vector.  All products between them are evaluated on the index arrays, so a
``k**n x k**n`` operator costs ``O(k**n)`` memory instead of ``O(k**(2n))``.

Dense matrices are plain two-dimensional :class:`numpy.ndarray` objects.  Use an
``object`` array of :class:`fractions.Fraction` for exact arithmetic and a
``float64`` array otherwise.
"""

from __future__ import annotations

import math
import os
from typing import Iterable, Union

import numpy as np

__all__ = [
    "DEFAULT_SIZE_CAP",
    "PermutationMatrix",
    "SizeLimitError",
    "check_size",
    "delta",
    "identity",
    "kron",
    "perm_apply_row",
    "perm_compose",
    "size_cap",
    "stp",
    "swap_matrix",
    "to_dense",
]

DEFAULT_SIZE_CAP = 2**24


class SizeLimitError(ValueError):
    """Raised when a dense expansion would exceed the configured entry cap."""


def size_cap() -> int:
    """Largest number of entries any dense result may have.

    Read from the ``SYMGAME_SIZE_CAP`` environment variable on every call so the
    CLI and tests can adjust it without reloading the module.
    """
    raw = os.environ.get("SYMGAME_SIZE_CAP")
    if raw is None or raw.strip() == "":
        return DEFAULT_SIZE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"SYMGAME_SIZE_CAP must be an integer, got {raw!r}") from None
    if cap <= 0:
        raise ValueError("SYMGAME_SIZE_CAP must be positive")
    return cap


def check_size(rows: int, cols: int, what: str = "matrix") -> None:
    cap = size_cap()
    if rows * cols > cap:
        raise SizeLimitError(
            f"{what} of shape {rows}x{cols} has {rows * cols} entries, "
            f"above the size cap of {cap} (set SYMGAME_SIZE_CAP to raise it)"
        )


class PermutationMatrix:
    """Square 0/1 permutation matrix stored as its column images.

    ``image`` is exposed 1-based, matching delta notation; storage is a
    0-based read-only integer array.
    """

    __slots__ = ("_img",)

    def __init__(self, image: Iterable[int]):
        img = np.asarray(list(image) if not isinstance(image, np.ndarray) else image,
                         dtype=np.int64) - 1
        if img.ndim != 1 or img.size == 0:
            raise ValueError("image must be a non-empty one-dimensional sequence")
        m = img.size
        if img.min() < 0 or img.max() >= m or np.unique(img).size != m:
            raise ValueError(f"image is not a permutation of 1..{m}")
        img.setflags(write=False)
        self._img = img

    @classmethod
    def _from_zero_based(cls, img: np.ndarray) -> "PermutationMatrix":
        obj = cls.__new__(cls)
        img = np.ascontiguousarray(img, dtype=np.int64)
        img.setflags(write=False)
        obj._img = img
        return obj

    @property
    def size(self) -> int:
        return int(self._img.size)

    @property
    def image(self) -> tuple[int, ...]:
        return tuple(int(i) + 1 for i in self._img)

    @property
    def array(self) -> np.ndarray:
        """0-based image array (read-only)."""
        return self._img

    @property
    def shape(self) -> tuple[int, int]:
        return (self.size, self.size)

    def inverse(self) -> "PermutationMatrix":
        inv = np.empty_like(self._img)
        inv[self._img] = np.arange(self.size)
        return PermutationMatrix._from_zero_based(inv)

    @property
    def T(self) -> "PermutationMatrix":
        return self.inverse()

    def is_identity(self) -> bool:
        return bool(np.array_equal(self._img, np.arange(self.size)))

    def to_dense(self, dtype=np.int64) -> np.ndarray:
        check_size(self.size, self.size, "permutation matrix")
        out = np.zeros((self.size, self.size), dtype=dtype)
        out[self._img, np.arange(self.size)] = 1
        return out

    def __matmul__(self, other):
        if isinstance(other, PermutationMatrix):
            return perm_compose(self, other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermutationMatrix):
            return NotImplemented
        return np.array_equal(self._img, other._img)

    def __hash__(self) -> int:
        return hash(self._img.tobytes())

    def __repr__(self) -> str:
        if self.size <= 32:
            body = " ".join(str(i) for i in self.image)
        else:
            head = " ".join(str(i) for i in self.image[:8])
            body = f"{head} ..."
        return f"delta_{self.size}[{body}]"


Matrix = Union[np.ndarray, PermutationMatrix]


def identity(m: int) -> PermutationMatrix:
    if m < 1:
        raise ValueError("identity size must be positive")
    return PermutationMatrix._from_zero_based(np.arange(m))


def delta(m: int, i: int, dtype=np.int64) -> np.ndarray:
    """The ``i``-th column of ``I_m`` as an ``m x 1`` matrix."""
    if not 1 <= i <= m:
        raise ValueError(f"delta index {i} out of range 1..{m}")
    out = np.zeros((m, 1), dtype=dtype)
    out[i - 1, 0] = 1
    return out


def to_dense(a: Matrix, dtype=None) -> np.ndarray:
    if isinstance(a, PermutationMatrix):
        return a.to_dense() if dtype is None else a.to_dense(dtype)
    arr = np.asarray(a)
    if arr.ndim != 2:
        raise ValueError(f"expected a two-dimensional matrix, got shape {arr.shape}")
    return arr if dtype is None else arr.astype(dtype)


def _perm_kron(p: PermutationMatrix, q: PermutationMatrix) -> PermutationMatrix:
    # column (a, b) of p (x) q is e_{p(a)} (x) e_{q(b)}
    qs = q.size
    img = (p.array[:, None] * qs + q.array[None, :]).ravel()
    return PermutationMatrix._from_zero_based(img)


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; stays in delta form when both factors are permutations."""
    if isinstance(a, PermutationMatrix) and isinstance(b, PermutationMatrix):
        return _perm_kron(a, b)
    a_d, b_d = to_dense(a), to_dense(b)
    check_size(a_d.shape[0] * b_d.shape[0], a_d.shape[1] * b_d.shape[1], "Kronecker product")
    return np.kron(a_d, b_d)


def perm_compose(p: PermutationMatrix, q: PermutationMatrix) -> PermutationMatrix:
    """The permutation matrix equal to the dense product ``p @ q``."""
    if p.size != q.size:
        raise ValueError(f"size mismatch: {p.size} vs {q.size}")
    return PermutationMatrix._from_zero_based(p.array[q.array])


def perm_apply_row(v, p: PermutationMatrix) -> np.ndarray:
    """Row vector times permutation matrix: ``(v p)[j] = v[image[j]]``."""
    arr = np.asarray(v)
    if arr.ndim == 2 and arr.shape[0] == 1:
        return perm_apply_row(arr[0], p)[None, :]
    if arr.ndim != 1:
        raise ValueError("expected a row vector")
    if arr.size != p.size:
        raise ValueError(f"size mismatch: vector of length {arr.size}, permutation of size {p.size}")
    return arr[p.array]


def swap_matrix(m: int, n: int | None = None) -> PermutationMatrix:
    """Swap matrix ``W_[m,n]``; ``swap_matrix(k)`` gives ``W_[k] = W_[k,k]``.

    Columns are indexed by ``(i, j)`` in ``m x n`` lexicographic order and rows by
    ``(j, i)`` in ``n x m`` order, so ``W (x (x) y) = y (x) x``.
    """
    if n is None:
        n = m
    if m < 1 or n < 1:
        raise ValueError("swap matrix dimensions must be positive")
    cap = size_cap()
    if m * n > cap:
        raise SizeLimitError(f"swap matrix of size {m * n} exceeds cap {cap}")
    i = np.arange(m)[:, None]
    j = np.arange(n)[None, :]
    img = (j * m + i).ravel()
    return PermutationMatrix._from_zero_based(img)


def stp(a: Matrix, b: Matrix) -> Matrix:
    """Left semi-tensor product ``(a (x) I_{t/n}) (b (x) I_{t/p})`` with ``t = lcm(n, p)``.

    ``n`` is the column count of ``a`` and ``p`` the row count of ``b``.
    """
    n = a.shape[1]
    p = b.shape[0]
    alpha = math.lcm(n, p)
    if isinstance(a, PermutationMatrix) and isinstance(b, PermutationMatrix):
        return perm_compose(kron(a, identity(alpha // n)), kron(b, identity(alpha // p)))
    a_d, b_d = to_dense(a), to_dense(b)
    left_rows = a_d.shape[0] * (alpha // n)
    right_cols = b_d.shape[1] * (alpha // p)
    check_size(left_rows, alpha, "semi-tensor product factor")
    check_size(alpha, right_cols, "semi-tensor product factor")
    check_size(left_rows, right_cols, "semi-tensor product")
    left = a_d if alpha == n else np.kron(a_d, np.eye(alpha // n, dtype=np.int64))
    right = b_d if alpha == p else np.kron(b_d, np.eye(alpha // p, dtype=np.int64))
    return left @ right
