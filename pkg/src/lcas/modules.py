"""Submodules of free Q[del]-modules: Hermite and Smith normal forms.

Rows are tuples of univariate polynomials in ``del``.  A submodule is kept in
Hermite form (echelon, monic pivots, entries above each pivot reduced modulo
it), which is unique and therefore serves as the equality test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .lca import Element, LCAlgebra, bracket_eval, lam_coefficients
from .poly import ONE, ZERO, Poly, monic, udivmod

Row = tuple


def _deg(p: Poly) -> int:
    return p.degree("del") if p else -1


def _row_sub(a: Sequence[Poly], b: Sequence[Poly], q: Poly) -> Row:
    return tuple(x - q * y for x, y in zip(a, b))


def _row_scale(a: Sequence[Poly], c) -> Row:
    return tuple(x.scale(c) for x in a)


def _lead_scalar(p: Poly) -> Fraction:
    return Fraction(p.leading("del")[1].constant_term())


def hermite_form(rows: Sequence[Sequence[Poly]], ncols: int) -> list[Row]:
    """Row-echelon Hermite form over Q[del]; zero rows dropped.

    Pivot choice: lowest del-degree, ties broken by the lower row index.
    """
    work = [tuple(r) for r in rows if any(r)]
    out: list[Row] = []
    for c in range(ncols):
        while True:
            cands = [(_deg(r[c]), idx) for idx, r in enumerate(work) if r[c]]
            if not cands:
                break
            _, best = min(cands)
            pivot = work.pop(best)
            done = True
            nxt = []
            for r in work:
                if r[c]:
                    q, rem = udivmod(r[c], pivot[c])
                    r = _row_sub(r, pivot, q)
                    if rem:
                        done = False
                if any(r):
                    nxt.append(r)
            work = nxt
            if done:
                pivot = _row_scale(pivot, 1 / _lead_scalar(pivot[c]))
                reduced = []
                for r in out:
                    if r[c]:
                        q, _ = udivmod(r[c], pivot[c])
                        r = _row_sub(r, pivot, q)
                    reduced.append(r)
                out = reduced + [pivot]
                break
            work.append(pivot)
        if not work:
            break
    return out


def reduce_row(row: Sequence[Poly], basis: Sequence[Row]) -> Row:
    """Remainder of ``row`` against a Hermite basis (zero iff member)."""
    r = tuple(row)
    for b in basis:
        c = next(i for i, x in enumerate(b) if x)
        if r[c]:
            q, _ = udivmod(r[c], b[c])
            r = _row_sub(r, b, q)
    return r


@dataclass(frozen=True)
class Submodule:
    algebra: LCAlgebra
    rows: tuple[Row, ...]

    @classmethod
    def generated_by(cls, algebra: LCAlgebra, elements: Sequence[Element | Sequence[Poly]]) -> "Submodule":
        vecs = [e.coords if isinstance(e, Element) else tuple(e) for e in elements]
        return cls(algebra, tuple(hermite_form(vecs, algebra.rank)))

    @property
    def generators(self) -> list[Element]:
        return [Element(r, self.algebra) for r in self.rows]

    def contains(self, e: Element | Sequence[Poly]) -> bool:
        vec = e.coords if isinstance(e, Element) else tuple(e)
        return not any(reduce_row(vec, self.rows))

    def is_zero(self) -> bool:
        return not self.rows

    def is_full(self) -> bool:
        return len(self.rows) == self.algebra.rank and all(
            r[i] == 1 for i, r in enumerate(self.rows)
        )

    def __str__(self) -> str:
        if not self.rows:
            return "0"
        return ", ".join(str(g) for g in self.generators)


# -- Smith normal form ----------------------------------------------------


@dataclass(frozen=True)
class SmithReport:
    invariant_factors: tuple[Poly, ...]
    quotient_free: bool
    complement: Submodule | None
    basis: tuple[Row, ...]
    coords: tuple[Row, ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d)

    @property
    def torsion(self) -> tuple[Poly, ...]:
        return tuple(d for d in self.invariant_factors if d and _deg(d) > 0)

    def split(self, e: Element | Sequence[Poly]) -> tuple[Row, Row]:
        """Decompose a vector as (part in the submodule, part in the complement).

        Only meaningful when ``quotient_free``; ``basis`` rows ``w_k`` satisfy
        ``e_j = sum_k coords[j][k] w_k`` and the first ``rank`` rows span the
        submodule.
        """
        vec = e.coords if isinstance(e, Element) else tuple(e)
        n = len(vec)
        c = [sum((vec[j] * self.coords[j][k] for j in range(n)), ZERO) for k in range(n)]
        r = self.rank
        inside = [ZERO] * n
        outside = [ZERO] * n
        for k in range(n):
            if not c[k]:
                continue
            target = inside if k < r else outside
            for i in range(n):
                target[i] = target[i] + c[k] * self.basis[k][i]
        return tuple(inside), tuple(outside)


def smith_form(rows: Sequence[Sequence[Poly]], ncols: int):
    """Smith normal form ``A V = U diag`` over Q[del].

    Returns ``(factors, V, W)`` with ``W = V^-1``; only column operations are
    tracked.  ``factors`` has length ``ncols`` (zeros for the free part),
    monic, each dividing the next.
    """
    A = [list(r) for r in rows if any(r)]
    m = len(A)
    n = ncols
    V = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    W = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]

    def col_swap(a, b):
        for row in A:
            row[a], row[b] = row[b], row[a]
        for row in V:
            row[a], row[b] = row[b], row[a]
        W[a], W[b] = W[b], W[a]

    def col_addmul(dst, src, q):
        # col_dst -= q * col_src
        for row in A:
            if row[src]:
                row[dst] = row[dst] - q * row[src]
        for row in V:
            if row[src]:
                row[dst] = row[dst] - q * row[src]
        W[src] = [w + q * x for w, x in zip(W[src], W[dst])]

    factors: list[Poly] = []
    t = 0
    while t < min(m, n):
        cands = [
            (_deg(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]
        ]
        if not cands:
            break
        _, pi, pj = min(cands)
        A[t], A[pi] = A[pi], A[t]
        if pj != t:
            col_swap(t, pj)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q, rem = udivmod(A[i][t], p)
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                    if rem:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q, rem = udivmod(A[t][j], p)
                    col_addmul(j, t, q)
                    if rem:
                        dirty = True
            if not dirty:
                bad = next(
                    (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] and udivmod(A[i][j], p)[1]),
                    None,
                )
                if bad is None:
                    break
                A[t] = [x + y for x, y in zip(A[t], A[bad])]
                continue
            cands = [
                (_deg(A[i][j]), i, j)
                for i in range(t, m)
                for j in range(t, n)
                if A[i][j] and (i == t or j == t)
            ]
            _, pi, pj = min(cands)
            A[t], A[pi] = A[pi], A[t]
            if pj != t:
                col_swap(t, pj)
        factors.append(monic(A[t][t]))
        t += 1
    factors += [ZERO] * (n - len(factors))
    return factors, V, W


def complement_test(R: LCAlgebra, S: Submodule) -> SmithReport:
    """Decide whether ``R = S (+) U`` for a free submodule ``U``."""
    n = R.rank
    factors, V, W = smith_form(S.rows, n)
    r = sum(1 for d in factors if d)
    free = all(_deg(d) == 0 for d in factors if d)
    complement = Submodule.generated_by(R, [tuple(W[k]) for k in range(r, n)]) if free else None
    return SmithReport(
        tuple(factors),
        free,
        complement,
        tuple(tuple(w) for w in W),
        tuple(tuple(v) for v in V),
    )


def derived_subalgebra(R: LCAlgebra) -> Submodule:
    """``[R, R]``: span of all lam-coefficients of generator brackets."""
    gens = []
    for a in R.gens():
        for b in R.gens():
            gens.extend(lam_coefficients(bracket_eval(a, b), R).values())
    return Submodule.generated_by(R, gens)


def is_ideal(S: Submodule) -> bool:
    """Every lam-coefficient of ``[e_i lam s]`` lies in ``S`` for generators ``s``."""
    R = S.algebra
    for a in R.gens():
        for s in S.generators:
            for c in lam_coefficients(bracket_eval(a, s), R).values():
                if not S.contains(c):
                    return False
    return True


__all__ = [
    "SmithReport",
    "Submodule",
    "complement_test",
    "derived_subalgebra",
    "hermite_form",
    "is_ideal",
    "smith_form",
]
