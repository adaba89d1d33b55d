"""Pure-Python linear-algebra kernels (fallback for the compiled ``_ckernels``).

Both backends expose the same two functions:

``exact_rref(rows, ncols)``
    Reduced row-echelon form over Q of sparse rows (``dict col -> rational``).
    Returns ``(pivots, reduced)``: pivot columns ascending and the matching
    reduced rows, each with a 1 at its pivot and zeros in every other pivot
    column.

``rref_mod_p(matrix, p)``
    Reduced row-echelon form of a dense integer matrix over GF(p),
    ``p < 2**31``.  Returns ``(pivots, rows)`` with ``rows`` an ``int64``
    array of shape ``(rank, ncols)``.

``rank_mod_p(matrix, p)`` is the length of those pivots.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


def exact_rref(rows, ncols):
    pivots = {}
    for src in rows:
        r = {c: v for c, v in src.items() if v}
        hits = [c for c in r if c in pivots]
        for c in hits:
            f = r.pop(c, 0)
            if not f:
                continue
            for k, v in pivots[c].items():
                if k == c:
                    continue
                nv = r.get(k, 0) - f * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        if not r:
            continue
        c0 = min(r)
        lead = r[c0]
        if lead != 1:
            inv = Fraction(1) / lead
            r = {k: _norm(v * inv) for k, v in r.items()}
        for pr in pivots.values():
            f = pr.get(c0)
            if f:
                for k, v in r.items():
                    nv = pr.get(k, 0) - f * v
                    if nv:
                        pr[k] = _norm(nv)
                    else:
                        pr.pop(k, None)
        pivots[c0] = r
    order = sorted(pivots)
    return order, [pivots[c] for c in order]


def _norm(v):
    if type(v) is Fraction and v.denominator == 1:
        return v.numerator
    return v


def rref_mod_p(matrix, p):
    """Fully reduced row-echelon form over GF(p); returns ``(pivots, array)``."""
    a = np.array(matrix, dtype=np.int64, copy=True) % p
    if a.ndim != 2:
        a = a.reshape(0, 0)
    nrows, ncols = a.shape
    pivots = []
    rank = 0
    for c in range(ncols):
        if rank == nrows:
            break
        nz = np.nonzero(a[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + int(nz[0])
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, c]), p - 2, p)
        a[rank] = (a[rank] * inv) % p
        col = a[:, c].copy()
        col[rank] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[rank]) % p) % p
        pivots.append(c)
        rank += 1
    return pivots, a[:rank]


def rank_mod_p(matrix, p):
    return len(rref_mod_p(matrix, p)[0])
