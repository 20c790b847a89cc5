"""Exact rank computations and coordinate-triplet export for sparse systems."""

from __future__ import annotations

import json
from fractions import Fraction

import numpy as np
import scipy.sparse as sp
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

__all__ = ["exact_rank", "nullity", "read_triplets", "to_domain_matrix", "write_triplets"]


def _qq(x):
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    if isinstance(x, (int, np.integer)):
        return QQ(int(x))
    f = Fraction(x)
    return QQ(f.numerator, f.denominator)


def to_domain_matrix(a) -> DomainMatrix:
    """Sparse rational :class:`DomainMatrix` from a scipy sparse or dense matrix."""
    if sp.issparse(a):
        coo = sp.coo_matrix(a)
        rows: dict[int, dict[int, object]] = {}
        for i, j, v in zip(coo.row.tolist(), coo.col.tolist(), coo.data.tolist()):
            if v != 0:
                rows.setdefault(i, {})
                rows[i][j] = rows[i].get(j, QQ(0)) + _qq(v)
        return DomainMatrix(rows, coo.shape, QQ)
    arr = np.asarray(a)
    if arr.ndim != 2:
        raise ValueError("expected a matrix")
    rows = {}
    for i, j in zip(*np.nonzero(arr != 0)):
        rows.setdefault(int(i), {})[int(j)] = _qq(arr[i, j])
    return DomainMatrix(rows, arr.shape, QQ)


def exact_rank(a) -> int:
    """Rank over the rationals (no floating point involved)."""
    dm = to_domain_matrix(a)
    if dm.shape[0] == 0 or dm.shape[1] == 0:
        return 0
    return int(dm.rank())


def nullity(a) -> int:
    """Dimension of the right null space over the rationals."""
    return a.shape[1] - exact_rank(a)


def write_triplets(a, header: dict) -> bytes:
    """Coordinate-triplet text: one JSON header line, then ``row col value`` (1-based).

    Entries are sorted row-major so the output is byte-for-byte reproducible.
    """
    coo = sp.coo_matrix(a)
    order = np.lexsort((coo.col, coo.row))
    head = dict(header)
    head["rows"], head["cols"] = int(coo.shape[0]), int(coo.shape[1])
    head["nnz"] = int(np.count_nonzero(coo.data))
    lines = ["# " + json.dumps(head, sort_keys=True, separators=(",", ":"))]
    for idx in order:
        v = coo.data[idx]
        if v == 0:
            continue
        lines.append(f"{coo.row[idx] + 1} {coo.col[idx] + 1} {int(v) if float(v).is_integer() else v}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def read_triplets(data: bytes | str) -> tuple[dict, sp.csr_matrix]:
    """Inverse of :func:`write_triplets`."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# "):
        raise ValueError("missing triplet header line")
    header = json.loads(lines[0][2:])
    rows, cols, vals = [], [], []
    for line in lines[1:]:
        if not line.strip():
            continue
        r, c, v = line.split()
        rows.append(int(r) - 1)
        cols.append(int(c) - 1)
        vals.append(int(v) if v.lstrip("-").isdigit() else float(v))
    dtype = np.int64 if all(isinstance(v, int) for v in vals) else np.float64
    mat = sp.csr_matrix(
        (np.asarray(vals, dtype=dtype), (rows, cols)), shape=(header["rows"], header["cols"])
    )
    return header, mat
