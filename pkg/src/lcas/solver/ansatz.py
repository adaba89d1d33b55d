"""Coordinates of bounded ansatz spaces.

A :class:`Layout` fixes the column order of the linear systems: slot, then
matrix entry ``(i, j)`` row-major, then monomial ``del^p lam^q`` in graded
order (total degree ascending, higher ``del`` power first).  Element layouts
(for the center) use generator index then ``del`` power.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..cmap import ConformalMap
from ..lca import Element, LCAlgebra
from ..poly import VAR_INDEX, ZERO, Poly, unpack

_DEL = VAR_INDEX["del"]
_LAM = VAR_INDEX["lam"]


class OutOfBounds(ValueError):
    """A map has an entry outside the ansatz degree window."""


def entry_monomials(max_del: int, max_lam: int) -> list[tuple[int, int]]:
    mons = [(p, q) for p in range(max_del + 1) for q in range(max_lam + 1)]
    return sorted(mons, key=lambda pq: (pq[0] + pq[1], -pq[0]))


@dataclass(frozen=True)
class Layout:
    rank: int
    slots: tuple[tuple[int, int], ...]
    element: bool = False
    _units: tuple = field(init=False, repr=False, compare=False, hash=False)
    _index: dict = field(init=False, repr=False, compare=False, hash=False)
    _offsets: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        units = []
        offsets = []
        n = self.rank
        for s, (dmax, lmax) in enumerate(self.slots):
            offsets.append(len(units))
            if self.element:
                for j in range(n):
                    for p in range(dmax + 1):
                        units.append((s, j, 0, p, 0))
            else:
                mons = entry_monomials(dmax, lmax)
                for i in range(n):
                    for j in range(n):
                        for p, q in mons:
                            units.append((s, i, j, p, q))
        offsets.append(len(units))
        object.__setattr__(self, "_units", tuple(units))
        object.__setattr__(self, "_index", {u: k for k, u in enumerate(units)})
        object.__setattr__(self, "_offsets", tuple(offsets))

    @property
    def size(self) -> int:
        return len(self._units)

    @property
    def arity(self) -> int:
        return len(self.slots)

    def unit(self, col: int) -> tuple[int, int, int, int, int]:
        """``(slot, i, j, del power, lam power)``; for elements ``(slot, j, 0, p, 0)``."""
        return self._units[col]

    def slot_range(self, s: int) -> range:
        return range(self._offsets[s], self._offsets[s + 1])

    def project(self, s: int) -> "Layout":
        return Layout(self.rank, (self.slots[s],), self.element)

    # -- conversions ------------------------------------------------------

    def to_vector(self, items: Sequence[ConformalMap | Element]) -> dict[int, object]:
        if len(items) != self.arity:
            raise ValueError(f"expected a tuple of width {self.arity}, got {len(items)}")
        vec = {}
        for s, item in enumerate(items):
            if self.element:
                for j, p in enumerate(item.coords):
                    self._put(vec, s, j, 0, p)
            else:
                for i, row in enumerate(item.entries):
                    for j, p in enumerate(row):
                        self._put(vec, s, i, j, p)
        return vec

    def _put(self, vec, s, i, j, p: Poly):
        for m, c in p.terms.items():
            e = unpack(m)
            if any(x for k, x in enumerate(e) if k not in (_DEL, _LAM)):
                raise OutOfBounds("entry uses variables beyond del, lam")
            key = (s, i, j, e[_DEL], e[_LAM])
            col = self._index.get(key)
            if col is None:
                raise OutOfBounds(f"monomial del^{e[_DEL]} lam^{e[_LAM]} outside the ansatz of slot {s}")
            vec[col] = c

    def to_items(self, vec: dict[int, object], R: LCAlgebra) -> tuple:
        n = self.rank
        if self.element:
            coords = [[ZERO] * n for _ in self.slots]
            for col, c in vec.items():
                s, j, _, p, _ = self._units[col]
                coords[s][j] = coords[s][j] + Poly.monomial({"del": p}, _norm(c))
            return tuple(Element(tuple(cs), R) for cs in coords)
        mats = [[[ZERO] * n for _ in range(n)] for _ in self.slots]
        for col, c in vec.items():
            s, i, j, p, q = self._units[col]
            mats[s][i][j] = mats[s][i][j] + Poly.monomial({"del": p, "lam": q}, _norm(c))
        return tuple(ConformalMap(tuple(tuple(r) for r in m), R) for m in mats)

    def unit_items(self, col: int, R: LCAlgebra) -> tuple:
        return self.to_items({col: 1}, R)


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c
