"""Exact linear algebra over Q on sparse vectors (``dict col -> rational``).

The hot kernels come from the compiled ``_ckernels`` extension when it is
importable, else from ``_kernels_py``.  Setting ``LCAS_PURE_PYTHON=1`` forces
the fallback.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Iterable, Sequence

from . import _kernels_py

if os.environ.get("LCAS_PURE_PYTHON") == "1":
    _backend = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _backend  # type: ignore[attr-defined,no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        _backend = _kernels_py
        BACKEND = "python"

SparseVec = dict


def rref(rows: Iterable[SparseVec], ncols: int) -> tuple[list[int], list[SparseVec]]:
    return _backend.exact_rref(list(rows), ncols)


def rank_mod_p(matrix, p: int) -> int:
    return _backend.rank_mod_p(matrix, p)


def rref_mod_p(matrix, p: int):
    return _backend.rref_mod_p(matrix, p)


def nullspace_mod_p(matrix, ncols: int, p: int):
    """Reduced echelon basis (``int64`` array) of the kernel of ``matrix`` over GF(p)."""
    import numpy as np

    m = np.asarray(matrix, dtype=np.int64).reshape(-1, ncols)
    pivots, red = rref_mod_p(m, p)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for r, pc in enumerate(pivots):
            basis[t, pc] = (-int(red[r, f])) % p
    return rref_mod_p(basis, p)[1]


def nullspace(rows: Iterable[SparseVec], ncols: int) -> list[SparseVec]:
    """Canonical (reduced echelon) basis of ``{x : r . x = 0 for every row r}``."""
    pivots, reduced = rref(rows, ncols)
    pset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pset:
            continue
        v = {f: 1}
        for pc, row in zip(pivots, reduced):
            c = row.get(f)
            if c:
                v[pc] = -c
        basis.append(v)
    return canonical(basis, ncols)


def canonical(vectors: Iterable[SparseVec], ncols: int) -> list[SparseVec]:
    """Reduced echelon basis of the span, rows ordered by pivot column."""
    _, reduced = rref(vectors, ncols)
    return reduced


def reduce(vec: SparseVec, basis: Sequence[SparseVec]) -> SparseVec:
    """Remainder of ``vec`` against a reduced echelon basis."""
    r = {c: v for c, v in vec.items() if v}
    for row in basis:
        pc = min(row)
        f = r.get(pc)
        if not f:
            continue
        for k, v in row.items():
            nv = r.get(k, 0) - f * v
            if nv:
                r[k] = nv
            else:
                r.pop(k, None)
    return r


def intersect(a: Sequence[SparseVec], b: Sequence[SparseVec], ncols: int) -> list[SparseVec]:
    """Intersection of two spans given by reduced echelon bases."""
    if not a or not b:
        return []
    # v = sum_i x_i a_i lies in span(b) iff v - sum_p v[p] b_p = 0, p over b's pivots.
    bpiv = [min(row) for row in b]
    k = len(a)
    constraint_cols: dict[int, dict[int, Fraction]] = {}
    for i, ai in enumerate(a):
        resid = dict(ai)
        for p, row in zip(bpiv, b):
            f = ai.get(p)
            if not f:
                continue
            for c, v in row.items():
                nv = resid.get(c, 0) - f * v
                if nv:
                    resid[c] = nv
                else:
                    resid.pop(c, None)
        for c, v in resid.items():
            constraint_cols.setdefault(c, {})[i] = v
    coeffs = nullspace(constraint_cols.values(), k)
    out = []
    for x in coeffs:
        v: dict[int, Fraction] = {}
        for i, xi in x.items():
            for c, val in a[i].items():
                nv = v.get(c, 0) + xi * val
                if nv:
                    v[c] = nv
                else:
                    v.pop(c, None)
        out.append(v)
    return canonical(out, ncols)


def span_sum(a: Sequence[SparseVec], b: Sequence[SparseVec], ncols: int) -> list[SparseVec]:
    return canonical(list(a) + list(b), ncols)


def freeze(vectors: Sequence[SparseVec]) -> tuple[tuple[tuple[int, object], ...], ...]:
    """Hashable, order-stable form of a basis."""
    return tuple(tuple(sorted(v.items())) for v in vectors)
