# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled linear-algebra kernels; same contract as ``_kernels_py``."""

from fractions import Fraction

import numpy as np

cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


cdef object _norm(object v):
    if type(v) is Fraction and v.denominator == 1:
        return v.numerator
    return v


def exact_rref(rows, Py_ssize_t ncols):
    cdef dict pivots = {}
    cdef dict r, pr, piv
    cdef list hits
    cdef object f, lead, inv, nv, k, v, c, c0
    for src in rows:
        r = {}
        for k, v in src.items():
            if v:
                r[k] = v
        hits = [c for c in r if c in pivots]
        for c in hits:
            f = r.pop(c, 0)
            if not f:
                continue
            piv = pivots[c]
            for k, v in piv.items():
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


cdef int64_t _powmod(int64_t b, int64_t e, int64_t p):
    cdef int64_t r = 1
    b %= p
    while e > 0:
        if e & 1:
            r = (r * b) % p
        b = (b * b) % p
        e >>= 1
    return r


def rref_mod_p(matrix, int64_t p):
    arr = np.array(matrix, dtype=np.int64, copy=True)
    if arr.ndim != 2:
        arr = arr.reshape(0, 0)
    cdef cnp.ndarray[int64_t, ndim=2] a = arr % p
    cdef Py_ssize_t nrows = a.shape[0], ncols = a.shape[1]
    cdef Py_ssize_t rank = 0, c, r, piv, t
    cdef int64_t inv, f, x
    pivots = []
    for c in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for r in range(rank, nrows):
            if a[r, c] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for t in range(ncols):
                x = a[rank, t]
                a[rank, t] = a[piv, t]
                a[piv, t] = x
        inv = _powmod(a[rank, c], p - 2, p)
        for t in range(c, ncols):
            a[rank, t] = (a[rank, t] * inv) % p
        for r in range(nrows):
            if r == rank:
                continue
            f = a[r, c]
            if f == 0:
                continue
            for t in range(c, ncols):
                if a[rank, t] != 0:
                    a[r, t] = (a[r, t] - (f * a[rank, t]) % p + p) % p
        pivots.append(c)
        rank += 1
    return pivots, np.asarray(a[:rank])


def rank_mod_p(matrix, int64_t p):
    return len(rref_mod_p(matrix, p)[0])
