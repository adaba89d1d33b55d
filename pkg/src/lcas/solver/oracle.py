"""Independent check of solve_space by pointwise evaluation over a prime field.

The identity system is rebuilt numerically: each unit ansatz map is pushed
through the four bracket terms evaluated at integer points ``(del, lam, mu)
= (2+i, 3+j, 5+k)``.  With ``T + 1`` points per variable, where ``T`` bounds
the degree of every residual polynomial in each variable, a polynomial that
vanishes on the grid is zero, so the evaluated system has the same kernel.
The kernel is computed over GF(p) and its reduced echelon form compared with
the exact basis from :func:`solve_space` reduced mod ``p``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .. import linalg
from ..lca import LCAlgebra
from .ansatz import Layout
from .identities import identity_terms
from .kinds import DegreeBound, DerivationKind, kind as as_kind
from .spaces import _bounds, layout_for, solve_space

PRIMES = (2**31 - 1, 2**31 - 19, 2**31 - 61)


@dataclass(frozen=True)
class OracleReport:
    ok: bool
    kind: str
    solver_dimension: int
    oracle_dimension: int
    prime: int
    grid_points: int
    columns: int

    def __bool__(self) -> bool:
        return self.ok


def grid_size(kind: DerivationKind, R: LCAlgebra, layout: Layout) -> int:
    """Points per variable: one more than the per-variable residual degree bound."""
    top = max(d + l for d, l in layout.slots)
    return top + R.table_degree() + 1


def _mod(x, p: int) -> int:
    if isinstance(x, Fraction):
        return x.numerator % p * pow(x.denominator % p, p - 2, p) % p
    return x % p


def evaluated_matrix(kind: DerivationKind, R: LCAlgebra, layout: Layout, p: int) -> tuple[np.ndarray, int]:
    n = R.rank
    size = grid_size(kind, R, layout)
    center = kind.tag == "center"
    axes = [range(size)] * (2 if center else 3)
    points = [tuple(s + t for s, t in zip((2, 3, 5), idx)) for idx in itertools.product(*axes)]
    table = R.table

    def P(i, j, k, d, l):
        poly = table[i][j][k]
        return poly.evaluate({"del": d, "lam": l}) if poly else 0

    blocks = None if center else identity_terms(kind)
    nblocks = 1 if center else len(blocks)
    npairs = n if center else n * n
    rows_per_point = npairs * nblocks * n
    M = np.zeros((len(points) * rows_per_point, layout.size), dtype=np.int64)

    for pt_index, pt in enumerate(points):
        base = pt_index * rows_per_point
        if center:
            d, l = pt
            for col in range(layout.size):
                _, a, _, pw, _ = layout.unit(col)
                f = (-l) ** pw
                for j in range(n):
                    for k in range(n):
                        v = f * P(a, j, k, d, l)
                        if v:
                            r = base + j * n + k
                            M[r, col] = (int(M[r, col]) + _mod(v, p)) % p
            continue
        d, l, m = pt
        # per point: P_ij^k at (d+l, m), (d, l+m), (d, m)
        at_db = {(i, j, k): P(i, j, k, d + l, m) for i in range(n) for j in range(n) for k in range(n)}
        at_lm = {(i, j, k): P(i, j, k, d, l + m) for i in range(n) for j in range(n) for k in range(n)}
        at_m = {(i, j, k): P(i, j, k, d, m) for i in range(n) for j in range(n) for k in range(n)}
        for col in range(layout.size):
            slot, a, b, pw, q = layout.unit(col)
            lq = l**q
            for bi, block in enumerate(blocks):
                for s, name, c in block:
                    if s != slot:
                        continue
                    contribs = []
                    if name == "DB":
                        f = d**pw * lq
                        contribs = [((i, j, a), f * at_db[(i, j, b)]) for i in range(n) for j in range(n)]
                    elif name == "LEFT":
                        f = (-(l + m)) ** pw * lq
                        contribs = [((b, j, k), f * at_lm[(a, j, k)]) for j in range(n) for k in range(n)]
                    elif name == "LEFTMU":
                        f = (-m) ** pw * lq
                        contribs = [((b, j, k), f * at_m[(a, j, k)]) for j in range(n) for k in range(n)]
                    elif name == "RIGHT":
                        f = (d + m) ** pw * lq
                        contribs = [((i, b, k), f * at_m[(i, a, k)]) for i in range(n) for k in range(n)]
                    for (i, j, k), v in contribs:
                        if not v:
                            continue
                        r = base + ((i * n + j) * nblocks + bi) * n + k
                        M[r, col] = (int(M[r, col]) + _mod(c * v, p)) % p
    return M, len(points)


def _reduce_exact(vectors, ncols: int, p: int) -> np.ndarray | None:
    out = np.zeros((len(vectors), ncols), dtype=np.int64)
    for r, vec in enumerate(vectors):
        for c, v in vec.items():
            if isinstance(v, Fraction) and v.denominator % p == 0:
                return None
            out[r, c] = _mod(v, p)
    return out


def oracle_report(kind, R: LCAlgebra, bounds: DegreeBound | tuple[int, int]) -> OracleReport:
    kind = as_kind(kind)
    bounds = _bounds(bounds)
    layout = layout_for(kind, R, bounds)
    space = solve_space(kind, R, bounds, verify=False)
    last = None
    for p in PRIMES:
        M, npts = evaluated_matrix(kind, R, layout, p)
        kernel = linalg.nullspace_mod_p(M, layout.size, p)
        exact = _reduce_exact(space.vectors, layout.size, p)
        last = OracleReport(False, str(kind), space.dimension, kernel.shape[0], p, npts, layout.size)
        if exact is None:
            continue
        if kernel.shape == exact.shape and np.array_equal(kernel, exact):
            return OracleReport(True, str(kind), space.dimension, kernel.shape[0], p, npts, layout.size)
    return last


def oracle_check(kind, R: LCAlgebra, bounds: DegreeBound | tuple[int, int]) -> bool:
    """True when the evaluated system's kernel equals the solver's space."""
    return oracle_report(kind, R, bounds).ok
