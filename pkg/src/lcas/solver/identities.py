"""Defining identities as residuals, and their linear systems over the ansatz.

Every identity is a signed combination of four bilinear terms evaluated on a
generator pair ``(e_i, e_j)``, all in the variables ``(del, lam, mu)``:

``DB``      ``D_lam([e_i mu e_j])``
``LEFT``    ``[(D_lam e_i)_{lam+mu} e_j]``
``RIGHT``   ``[e_i mu (D_lam e_j)]``
``LEFTMU``  ``[(D_lam e_i)_mu e_j]``

:func:`residual` evaluates them through the general map/bracket machinery;
:func:`build_system` expands unit ansatz maps through closed forms of the same
terms, so the symbolic re-check of solutions is not a rerun of the solver.
"""

from __future__ import annotations

from ..cmap import ConformalMap, act
from ..lca import AlgebraError, Element, LCAlgebra, Vector, vec_is_zero
from ..poly import DEL, LAM, MU, ONE, ZERO, Poly
from .ansatz import Layout
from .kinds import DerivationKind

# Each block is a tuple of (slot, term name, coefficient); blocks are separate equations.
Blocks = tuple[tuple[tuple[int, str, object], ...], ...]


def identity_terms(kind: DerivationKind) -> Blocks:
    t = kind.tag
    if t == "cder":
        return (((0, "DB", 1), (0, "LEFT", -1), (0, "RIGHT", -1)),)
    if t == "qder":
        return (((0, "LEFT", 1), (0, "RIGHT", 1), (1, "DB", -1)),)
    if t == "gder":
        return (((0, "LEFT", 1), (1, "RIGHT", 1), (2, "DB", -1)),)
    if t == "centroid":
        return (((0, "DB", 1), (0, "LEFT", -1)), ((0, "DB", 1), (0, "RIGHT", -1)))
    if t == "qc":
        return (((0, "LEFT", 1), (0, "RIGHT", -1)),)
    if t == "zder":
        return (((0, "LEFTMU", 1),), ((0, "DB", 1),))
    if t == "abg":
        p = kind.params
        terms = tuple(
            (0, name, c) for name, c in (("DB", p.alpha), ("LEFT", -p.beta), ("RIGHT", -p.gamma)) if c
        )
        return (terms,)
    raise ValueError(f"{kind} has no map identity")


def _unit(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def _term(name: str, D: ConformalMap, R: LCAlgebra, i: int, j: int) -> Vector:
    n = R.rank
    if name == "DB":
        return act(D.entries, R.generator_bracket(i, j, MU), LAM)
    if name == "LEFT":
        return R.bracket_vectors(D.column(i), _unit(n, j), LAM + MU)
    if name == "RIGHT":
        return R.bracket_vectors(_unit(n, i), D.column(j), MU)
    if name == "LEFTMU":
        return R.bracket_vectors(D.column(i), _unit(n, j), MU)
    raise ValueError(name)


def residual(kind: DerivationKind, maps, R: LCAlgebra) -> dict[tuple[int, ...], tuple[Vector, ...]]:
    """Residual vectors per generator pair ``(i, j)``, one per identity block.

    For ``center`` pass a single :class:`Element` (or a 1-tuple of one); keys
    are then ``(j,)`` and the vector is ``[z lam e_j]``.
    """
    n = R.rank
    if kind.tag == "center":
        z = maps[0] if isinstance(maps, (tuple, list)) else maps
        if not isinstance(z, Element):
            raise TypeError("center residual takes an Element")
        if not z.algebra.same(R):
            raise AlgebraError("element belongs to a different algebra")
        return {(j,): (R.bracket_vectors(z.coords, _unit(n, j), LAM),) for j in range(n)}
    if isinstance(maps, ConformalMap):
        maps = (maps,)
    maps = tuple(maps)
    if len(maps) != kind.arity:
        raise ValueError(f"{kind} needs a tuple of {kind.arity} maps, got {len(maps)}")
    for m in maps:
        if not m.algebra.same(R):
            raise AlgebraError("map belongs to a different algebra")
    blocks = identity_terms(kind)
    out = {}
    for i in range(n):
        for j in range(n):
            vecs = []
            for block in blocks:
                acc = [ZERO] * n
                for slot, name, c in block:
                    v = _term(name, maps[slot], R, i, j)
                    for k in range(n):
                        if v[k]:
                            acc[k] = acc[k] + v[k] * c
                vecs.append(tuple(acc))
            out[(i, j)] = tuple(vecs)
    return out


def is_zero_residual(res: dict) -> bool:
    return all(vec_is_zero(v) for vecs in res.values() for v in vecs)


# -- linear systems -------------------------------------------------------


class _Cache:
    """Substituted structure polynomials shared by all unit columns."""

    def __init__(self, R: LCAlgebra):
        self.R = R
        self.n = R.rank
        self._db: dict = {}
        self._p: dict = {}

    def shifted_mu(self, i, j, b) -> Poly:
        """``P_ij^b(del + lam, mu)``."""
        key = (i, j, b)
        hit = self._db.get(key)
        if hit is None:
            p = self.R.table[i][j][b]
            hit = p.substitute({"del": DEL + LAM, "lam": MU}) if p else ZERO
            self._db[key] = hit
        return hit

    def at(self, a, j, k, nu: str) -> Poly:
        """``P_aj^k(del, nu)`` for ``nu`` one of ``lam+mu``, ``mu``, ``lam``."""
        key = (a, j, k, nu)
        hit = self._p.get(key)
        if hit is None:
            p = self.R.table[a][j][k]
            if not p or nu == "lam":
                hit = p
            else:
                hit = p.substitute({"lam": LAM + MU if nu == "lam+mu" else MU})
            self._p[key] = hit
        return hit


def _unit_term(name: str, cache: _Cache, a: int, b: int, p: int, q: int):
    """Nonzero ``(i, j, k, poly)`` of a term for the unit map ``e_b -> del^p lam^q e_a``."""
    n = cache.n
    lamq = Poly.monomial({"lam": q})
    out = []
    if name == "DB":
        mon = Poly.monomial({"del": p, "lam": q})
        for i in range(n):
            for j in range(n):
                s = cache.shifted_mu(i, j, b)
                if s:
                    out.append((i, j, a, s * mon))
    elif name in ("LEFT", "LEFTMU"):
        nu = LAM + MU if name == "LEFT" else MU
        factor = (-nu) ** p * lamq
        tag = "lam+mu" if name == "LEFT" else "mu"
        for j in range(n):
            for k in range(n):
                s = cache.at(a, j, k, tag)
                if s:
                    out.append((b, j, k, factor * s))
    elif name == "RIGHT":
        factor = (DEL + MU) ** p * lamq
        for i in range(n):
            for k in range(n):
                s = cache.at(i, a, k, "mu")
                if s:
                    out.append((i, b, k, factor * s))
    else:
        raise ValueError(name)
    return out


def build_system(kind: DerivationKind, R: LCAlgebra, layout: Layout) -> list[dict]:
    """Sparse rows (``dict column -> coefficient``) whose kernel is the solution space.

    One row per (generator pair, block, coordinate, monomial), in sorted order.
    """
    cache = _Cache(R)
    n = R.rank
    rows: dict[tuple, dict[int, object]] = {}

    def add(key, col, c):
        row = rows.setdefault(key, {})
        nv = row.get(col, 0) + c
        if nv:
            row[col] = nv
        else:
            row.pop(col, None)

    if kind.tag == "center":
        for col in range(layout.size):
            _, a, _, p, _ = layout.unit(col)
            factor = (-LAM) ** p
            for j in range(n):
                for k in range(n):
                    s = cache.at(a, j, k, "lam")
                    if s:
                        for m, c in (factor * s).terms.items():
                            add((j, 0, k, m), col, c)
    else:
        blocks = identity_terms(kind)
        for col in range(layout.size):
            slot, a, b, p, q = layout.unit(col)
            for bi, block in enumerate(blocks):
                for s, name, c in block:
                    if s != slot:
                        continue
                    for i, j, k, poly in _unit_term(name, cache, a, b, p, q):
                        for m, v in poly.terms.items():
                            add((i, j, bi, k, m), col, v * c)
    return [rows[k] for k in sorted(rows) if rows[k]]
