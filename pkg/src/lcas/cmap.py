"""Conformal linear maps on a free algebra and the gc(R) lambda-bracket.

A :class:`ConformalMap` on a rank-``n`` algebra is an ``n x n`` matrix over
Q[del, lam]; column ``j`` holds ``phi_lam(e_j)``.  Conformal linearity
``phi_lam(del a) = (del + lam) phi_lam(a)`` fixes the action on arbitrary
elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .lca import AlgebraError, Element, LCAlgebra, Vector
from .poly import DEL, LAM, MU, ONE, ZERO, Poly

Matrix = tuple  # tuple of rows, each a tuple of Poly


def act(entries: Sequence[Sequence[Poly]], y: Sequence[Poly], param: Poly = LAM) -> Vector:
    """Apply the map with matrix ``entries`` at parameter ``param`` to a coefficient vector.

    ``y`` may carry parameters other than ``del``; only ``del`` is shifted to
    ``del + param``.  The map's own ``lam`` is replaced by ``param``.
    """
    n = len(entries)
    shift = {"del": DEL + param}
    rebind = None if param == LAM else {"lam": param}
    out = [ZERO] * n
    for k, yk in enumerate(y):
        if not yk:
            continue
        ys = yk.substitute(shift)
        for r in range(n):
            e = entries[r][k]
            if not e:
                continue
            if rebind is not None:
                e = e.substitute(rebind)
            out[r] = out[r] + ys * e
    return tuple(out)


def _columns(entries: Sequence[Sequence[Poly]]) -> list[Vector]:
    n = len(entries)
    return [tuple(entries[i][j] for i in range(n)) for j in range(n)]


def _from_columns(cols: Sequence[Sequence[Poly]]) -> Matrix:
    n = len(cols)
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


@dataclass(frozen=True)
class ConformalMap:
    entries: Matrix
    algebra: LCAlgebra = field(repr=False)

    def __post_init__(self):
        n = self.algebra.rank
        if len(self.entries) != n or any(len(r) != n for r in self.entries):
            raise AlgebraError("conformal map must be an n x n matrix")
        for row in self.entries:
            for p in row:
                if not p.variables() <= {"del", "lam"}:
                    raise AlgebraError("conformal map entries may only use del and lam")

    @classmethod
    def identity(cls, R: LCAlgebra) -> "ConformalMap":
        n = R.rank
        return cls(tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)), R)

    @classmethod
    def zero(cls, R: LCAlgebra) -> "ConformalMap":
        n = R.rank
        return cls(tuple(tuple(ZERO for _ in range(n)) for _ in range(n)), R)

    @classmethod
    def scalar(cls, R: LCAlgebra, p: Poly) -> "ConformalMap":
        n = R.rank
        return cls(tuple(tuple(p if i == j else ZERO for j in range(n)) for i in range(n)), R)

    @classmethod
    def single(cls, R: LCAlgebra, i: int, j: int, p: Poly) -> "ConformalMap":
        n = R.rank
        return cls(tuple(tuple(p if (r, c) == (i, j) else ZERO for c in range(n)) for r in range(n)), R)

    @property
    def rank(self) -> int:
        return self.algebra.rank

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def _check(self, other) -> None:
        if not self.algebra.same(other.algebra):
            raise AlgebraError("maps belong to different algebras")

    def __add__(self, other: "ConformalMap") -> "ConformalMap":
        self._check(other)
        return ConformalMap(
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)),
            self.algebra,
        )

    def __sub__(self, other: "ConformalMap") -> "ConformalMap":
        return self + other.scale(-1)

    def __neg__(self) -> "ConformalMap":
        return self.scale(-1)

    def scale(self, c) -> "ConformalMap":
        return ConformalMap(tuple(tuple(p * c for p in row) for row in self.entries), self.algebra)

    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.entries for p in row)

    def degrees(self) -> tuple[int, int]:
        """Maximum (del, lam) degrees over the entries; (-1, -1) for the zero map."""
        dd = dl = -1
        for row in self.entries:
            for p in row:
                if p:
                    dd = max(dd, p.degree("del"))
                    dl = max(dl, p.degree("lam"))
        return dd, dl

    def __call__(self, a: Element) -> Vector:
        return apply(self, a)

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(p.to_text() for p in row) for row in self.entries) + "]"


@dataclass(frozen=True)
class ConformalMap2:
    """Two-parameter map ``[phi lam psi]_mu``: entries in ``(del, lam, mu)``."""

    entries: Matrix
    algebra: LCAlgebra = field(repr=False)

    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.entries for p in row)

    def substitute(self, bindings) -> "ConformalMap2":
        return ConformalMap2(
            tuple(tuple(p.substitute(bindings) for p in row) for row in self.entries), self.algebra
        )

    def __add__(self, other: "ConformalMap2") -> "ConformalMap2":
        return ConformalMap2(
            tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)),
            self.algebra,
        )

    def scale(self, c) -> "ConformalMap2":
        return ConformalMap2(tuple(tuple(p * c for p in row) for row in self.entries), self.algebra)


def apply(phi: ConformalMap, a: Element) -> Vector:
    """``phi_lam(a)``; coordinates ``a_j(del)`` become ``a_j(del + lam)``."""
    if not phi.algebra.same(a.algebra):
        raise AlgebraError("map and element belong to different algebras")
    return act(phi.entries, a.coords, LAM)


def module_action(phi: ConformalMap) -> ConformalMap:
    """``(del phi)_lam = -lam phi_lam``."""
    return phi.scale(-LAM)


def gc_bracket(phi: ConformalMap, psi: ConformalMap) -> ConformalMap2:
    """``[phi lam psi]_mu = phi_lam psi_{mu-lam} - psi_{mu-lam} phi_lam``."""
    phi._check(psi)
    shifted = MU - LAM
    cols = []
    for j in range(phi.rank):
        psi_col = tuple(p.substitute({"lam": shifted}) for p in psi.column(j))
        first = act(phi.entries, psi_col, LAM)
        second = act(psi.entries, phi.column(j), shifted)
        cols.append(tuple(a - b for a, b in zip(first, second)))
    return ConformalMap2(_from_columns(cols), phi.algebra)


def extract_lam_coeffs(phi2: ConformalMap2) -> list[ConformalMap]:
    """Coefficients of ``lam^k`` as one-parameter maps (``mu`` renamed to ``lam``)."""
    n = phi2.algebra.rank
    by_power: dict[int, list[list[Poly]]] = {}
    for i in range(n):
        for j in range(n):
            for k, c in phi2.entries[i][j].coefficients("lam").items():
                by_power.setdefault(k, [[ZERO] * n for _ in range(n)])[i][j] = c.rename({"mu": "lam"})
    if not by_power:
        return []
    top = max(by_power)
    zero = [[ZERO] * n for _ in range(n)]
    return [
        ConformalMap(tuple(tuple(r) for r in by_power.get(k, zero)), phi2.algebra) for k in range(top + 1)
    ]


def bind_lam(phi2: ConformalMap2, p: Poly | int) -> ConformalMap:
    """Set ``lam = p`` then rename ``mu`` to ``lam`` (one simultaneous substitution)."""
    p = Poly._coerce(p)
    n = phi2.algebra.rank
    return ConformalMap(
        tuple(
            tuple(phi2.entries[i][j].substitute({"lam": p, "mu": LAM}) for j in range(n)) for i in range(n)
        ),
        phi2.algebra,
    )


def slot_substitute(phi2: ConformalMap2, which: str, p: Poly | int | None = None):
    if which == "extract_lam_coeffs":
        return extract_lam_coeffs(phi2)
    if which == "bind_lam":
        if p is None:
            raise ValueError("bind_lam needs a polynomial")
        return bind_lam(phi2, p)
    raise ValueError(f"unknown slot operation {which!r}")


__all__ = [
    "ConformalMap",
    "ConformalMap2",
    "act",
    "apply",
    "bind_lam",
    "extract_lam_coeffs",
    "gc_bracket",
    "module_action",
    "slot_substitute",
]
