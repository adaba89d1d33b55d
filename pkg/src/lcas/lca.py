"""Finite-rank Lie conformal algebras over Q[del].

An algebra of rank ``n`` is the free module on generators ``e_0 .. e_{n-1}``
with structure table ``table[i][j][k]`` in ``(del, lam)``::

    [e_i lam e_j] = sum_k table[i][j][k](del, lam) * e_k

Brackets of arbitrary elements follow from sesquilinearity.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

from .poly import DEL, LAM, MU, ZERO, Poly, as_rational

if TYPE_CHECKING:
    from .cmap import ConformalMap

RESERVED = frozenset({"del", "lam", "mu", "nu", "t1", "t2"})
IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

Vector = tuple  # tuple of Poly, one per generator


class AlgebraError(ValueError):
    """Raised for malformed structure data or mismatched algebras."""


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def vec_add(x: Sequence[Poly], y: Sequence[Poly]) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def vec_sub(x: Sequence[Poly], y: Sequence[Poly]) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def vec_scale(x: Sequence[Poly], c) -> Vector:
    return tuple(a * c for a in x)


def vec_is_zero(x: Sequence[Poly]) -> bool:
    return all(p.is_zero() for p in x)


def vec_substitute(x: Sequence[Poly], bindings: Mapping[str, Poly]) -> Vector:
    return tuple(p.substitute(bindings) for p in x)


@dataclass(frozen=True)
class LCAlgebra:
    names: tuple[str, ...]
    table: tuple[tuple[Vector, ...], ...]
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        n = len(self.names)
        if len(set(self.names)) != n:
            raise AlgebraError("generator names must be distinct")
        for name in self.names:
            if not IDENT.match(name) or name in RESERVED:
                raise AlgebraError(f"invalid generator name {name!r}")
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise AlgebraError("structure table must be n x n")
        for row in self.table:
            for vec in row:
                if len(vec) != n:
                    raise AlgebraError("structure vectors must have length n")
                for p in vec:
                    if not p.variables() <= {"del", "lam"}:
                        raise AlgebraError("structure polynomials may only use del and lam")

    @property
    def rank(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def gen(self, i: int | str) -> "Element":
        if isinstance(i, str):
            i = self.index(i)
        coords = [ZERO] * self.rank
        coords[i] = Poly.const(1)
        return Element(tuple(coords), self)

    def gens(self) -> list["Element"]:
        return [self.gen(i) for i in range(self.rank)]

    def element(self, coords: Iterable) -> "Element":
        return Element(tuple(Poly._coerce(c) for c in coords), self)

    def zero(self) -> "Element":
        return Element(zero_vector(self.rank), self)

    def table_degree(self) -> int:
        """Maximum total degree of a structure polynomial (0 for abelian tables)."""
        d = 0
        for row in self.table:
            for vec in row:
                for p in vec:
                    if p:
                        d = max(d, p.total_degree())
        return d

    def is_abelian(self) -> bool:
        return all(vec_is_zero(v) for row in self.table for v in row)

    def same(self, other: "LCAlgebra") -> bool:
        return self is other or self == other

    def table_at(self, nu: Poly) -> tuple[tuple[Vector, ...], ...]:
        """Structure table with ``lam`` replaced by ``nu`` (memoised)."""
        if nu == LAM:
            return self.table
        key = ("table_at", nu)
        hit = self._cache.get(key)
        if hit is None:
            hit = tuple(
                tuple(vec_substitute(vec, {"lam": nu}) for vec in row) for row in self.table
            )
            self._cache[key] = hit
        return hit

    def bracket_vectors(self, x: Sequence[Poly], y: Sequence[Poly], nu: Poly) -> Vector:
        """``[x nu y]`` for coefficient vectors whose entries may carry extra parameters.

        Sesquilinearity turns ``del`` in the left factor into ``-nu`` and in the
        right factor into ``del + nu``.
        """
        n = self.rank
        table = self.table_at(nu)
        left_bind = {"del": -nu}
        right_bind = {"del": DEL + nu}
        xs = [xi.substitute(left_bind) if xi else None for xi in x]
        ys = [yj.substitute(right_bind) if yj else None for yj in y]
        out = [ZERO] * n
        for i, xi in enumerate(xs):
            if xi is None:
                continue
            row = table[i]
            for j, yj in enumerate(ys):
                if yj is None:
                    continue
                vec = row[j]
                c = None
                for k, pk in enumerate(vec):
                    if pk:
                        if c is None:
                            c = xi * yj
                        out[k] = out[k] + c * pk
        return tuple(out)

    def generator_bracket(self, i: int, j: int, nu: Poly = LAM) -> Vector:
        return self.table_at(nu)[i][j]

    def __str__(self) -> str:
        lines = [f"LCAlgebra(rank={self.rank}, generators={list(self.names)})"]
        for i, j in itertools.combinations_with_replacement(range(self.rank), 2):
            vec = self.table[i][j]
            if not vec_is_zero(vec):
                lines.append(f"  [{self.names[i]} lam {self.names[j]}] = {format_vector(vec, self.names)}")
        return "\n".join(lines)


@dataclass(frozen=True)
class Element:
    coords: Vector
    algebra: LCAlgebra = field(repr=False)

    def __post_init__(self):
        if len(self.coords) != self.algebra.rank:
            raise AlgebraError("element length does not match algebra rank")
        for p in self.coords:
            if not p.variables() <= {"del"}:
                raise AlgebraError("element coordinates may only use del")

    def _check(self, other: "Element") -> None:
        if not self.algebra.same(other.algebra):
            raise AlgebraError("elements belong to different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(vec_add(self.coords, other.coords), self.algebra)

    def __sub__(self, other: "Element") -> "Element":
        self._check(other)
        return Element(vec_sub(self.coords, other.coords), self.algebra)

    def __neg__(self) -> "Element":
        return Element(tuple(-p for p in self.coords), self.algebra)

    def __rmul__(self, c) -> "Element":
        return Element(vec_scale(self.coords, c), self.algebra)

    def partial(self) -> "Element":
        """The element ``del * self``."""
        return Element(vec_scale(self.coords, DEL), self.algebra)

    def is_zero(self) -> bool:
        return vec_is_zero(self.coords)

    def __str__(self) -> str:
        return format_vector(self.coords, self.algebra.names)


def format_vector(vec: Sequence[Poly], names: Sequence[str]) -> str:
    parts = []
    for p, name in zip(vec, names):
        if p.is_zero():
            continue
        if p == 1:
            parts.append(name)
        elif len(p) == 1 and not p.is_constant():
            parts.append(f"{p.to_text()}*{name}")
        else:
            parts.append(f"({p.to_text()})*{name}")
    return " + ".join(parts) if parts else "0"


def bracket_eval(a: Element, b: Element) -> Vector:
    """``[a lam b]`` as a coefficient vector in ``(del, lam)``."""
    a._check(b)
    return a.algebra.bracket_vectors(a.coords, b.coords, LAM)


def lam_coefficients(vec: Sequence[Poly], algebra: LCAlgebra, var: str = "lam") -> dict[int, Element]:
    """Split a ``(del, var)`` coefficient vector into elements, one per power of ``var``."""
    by_power: dict[int, list[Poly]] = {}
    for k, p in enumerate(vec):
        for e, c in p.coefficients(var).items():
            by_power.setdefault(e, [ZERO] * algebra.rank)[k] = c
    return {e: Element(tuple(v), algebra) for e, v in sorted(by_power.items())}


# -- axioms --------------------------------------------------------------


@dataclass(frozen=True)
class AxiomReport:
    skew_ok: bool
    jacobi_ok: bool
    skew_residuals: dict
    jacobi_residuals: dict

    @property
    def ok(self) -> bool:
        return self.skew_ok and self.jacobi_ok


def skew_residual(R: LCAlgebra, i: int, j: int) -> Vector:
    """``[e_i lam e_j] + [e_j mu e_i]|_{mu -> -lam-del}``."""
    swapped = R.generator_bracket(j, i, MU)
    flipped = vec_substitute(swapped, {"mu": -LAM - DEL})
    return vec_add(R.table[i][j], flipped)


def jacobi_residual(R: LCAlgebra, i: int, j: int, k: int) -> Vector:
    """``[e_i lam [e_j mu e_k]] - [[e_i lam e_j] lam+mu e_k] - [e_j mu [e_i lam e_k]]``."""
    n = R.rank
    unit = lambda t: tuple(Poly.const(1) if s == t else ZERO for s in range(n))  # noqa: E731
    inner = R.generator_bracket(j, k, MU)
    first = R.bracket_vectors(unit(i), inner, LAM)
    second = R.bracket_vectors(R.table[i][j], unit(k), LAM + MU)
    third = R.bracket_vectors(unit(j), R.table[i][k], MU)
    return vec_sub(vec_sub(first, second), third)


def check_axioms(R: LCAlgebra) -> AxiomReport:
    n = R.rank
    skew = {}
    for i in range(n):
        for j in range(i, n):
            res = skew_residual(R, i, j)
            if not vec_is_zero(res):
                skew[(i, j)] = res
    jac = {}
    for i, j, k in itertools.product(range(n), repeat=3):
        res = jacobi_residual(R, i, j, k)
        if not vec_is_zero(res):
            jac[(i, j, k)] = res
    return AxiomReport(not skew, not jac, skew, jac)


# -- constructions -------------------------------------------------------


def skew_image(vec: Sequence[Poly]) -> Vector:
    """Given ``[a lam b]``, return ``[b lam a] = -[a_{-lam-del} b]``."""
    return tuple(-p.substitute({"lam": -LAM - DEL}) for p in vec)


def from_brackets(names: Sequence[str], brackets: Mapping[tuple[int, int], Sequence]) -> LCAlgebra:
    """Build an algebra from brackets, normally given on index pairs ``i <= j``.

    Missing entries are filled by skew symmetry.  If both ``(i, j)`` and
    ``(j, i)`` are given they must agree, otherwise :class:`AlgebraError`.
    """
    n = len(names)
    table = [[zero_vector(n) for _ in range(n)] for _ in range(n)]
    given = {}
    for (i, j), vec in brackets.items():
        vec = tuple(Poly._coerce(p) for p in vec)
        if len(vec) != n:
            raise AlgebraError(f"bracket ({names[i]},{names[j]}) has wrong length")
        given[(i, j)] = vec
    for (i, j), vec in given.items():
        if i <= j:
            table[i][j] = vec
            if i != j:
                table[j][i] = skew_image(vec)
    for (i, j), vec in given.items():
        if i > j:
            if (j, i) in given:
                if table[i][j] != vec:
                    raise AlgebraError(
                        f"bracket [{names[i]} lam {names[j]}] conflicts with the skew image of "
                        f"[{names[j]} lam {names[i]}]"
                    )
            else:
                table[i][j] = vec
                table[j][i] = skew_image(vec)
    return LCAlgebra(tuple(names), tuple(tuple(row) for row in table))


def direct_sum(R1: LCAlgebra, R2: LCAlgebra) -> LCAlgebra:
    n1, n2 = R1.rank, R2.rank
    if n2 == 0:
        return R1
    if n1 == 0:
        return R2
    names = list(R1.names)
    clash = set(R1.names) & set(R2.names)
    names += [f"{nm}_2" if nm in clash else nm for nm in R2.names]
    n = n1 + n2
    table = [[zero_vector(n) for _ in range(n)] for _ in range(n)]
    for i in range(n1):
        for j in range(n1):
            table[i][j] = tuple(R1.table[i][j]) + zero_vector(n2)
    for i in range(n2):
        for j in range(n2):
            table[n1 + i][n1 + j] = zero_vector(n1) + tuple(R2.table[i][j])
    return LCAlgebra(tuple(names), tuple(tuple(r) for r in table))


def validate_lie(constants: Sequence[Sequence[Sequence]]) -> None:
    """Raise :class:`AlgebraError` unless ``c[i][j][k]`` are Lie structure constants."""
    n = len(constants)
    c = [[[as_rational(constants[i][j][k]) for k in range(n)] for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if c[i][j][k] != -c[j][i][k]:
                    raise AlgebraError(f"constants not antisymmetric at ({i},{j},{k})")
    for i, j, k in itertools.product(range(n), repeat=3):
        for m in range(n):
            s = sum(
                c[j][k][l] * c[i][l][m] + c[k][i][l] * c[j][l][m] + c[i][j][l] * c[k][l][m]
                for l in range(n)
            )
            if s:
                raise AlgebraError(f"constants violate the Jacobi identity at ({i},{j},{k})")


def current_from_lie(constants: Sequence[Sequence[Sequence]], names: Sequence[str] | None = None) -> LCAlgebra:
    """The current algebra Q[del] (x) g with constant brackets ``[a lam b] = [a, b]``."""
    n = len(constants)
    for row in constants:
        if len(row) != n or any(len(v) != n for v in row):
            raise AlgebraError("structure constants must be an n x n x n array")
    validate_lie(constants)
    if names is None:
        names = [f"x{i}" for i in range(n)]
    table = tuple(
        tuple(tuple(Poly.const(constants[i][j][k]) for k in range(n)) for j in range(n))
        for i in range(n)
    )
    return LCAlgebra(tuple(names), table)


def truncated_extension(R: LCAlgebra) -> LCAlgebra:
    """``R (x) tQ[t]/(t^3)`` on generators ``e_i t`` then ``e_i t^2``."""
    n = R.rank
    names = [f"{nm}t" for nm in R.names] + [f"{nm}t2" for nm in R.names]
    if len(set(names)) != 2 * n:
        raise AlgebraError("extension generator names collide")
    table = [[zero_vector(2 * n) for _ in range(2 * n)] for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            table[i][j] = zero_vector(n) + tuple(R.table[i][j])
    return LCAlgebra(tuple(names), tuple(tuple(r) for r in table))


def mutate(R: LCAlgebra, i: int, j: int, k: int, delta: Poly) -> LCAlgebra:
    """Copy of ``R`` with the single entry ``table[i][j][k]`` increased by ``delta``."""
    table = [list(row) for row in R.table]
    vec = list(table[i][j])
    vec[k] = vec[k] + delta
    table[i][j] = tuple(vec)
    return LCAlgebra(R.names, tuple(tuple(r) for r in table))


# -- named fixtures -------------------------------------------------------

SL2_NAMES = ("e", "h", "f")


def sl2_constants() -> list[list[list[int]]]:
    """sl2 on the ordered basis (e, h, f)."""
    e, h, f = 0, 1, 2
    c = [[[0] * 3 for _ in range(3)] for _ in range(3)]

    def put(i, j, k, v):
        c[i][j][k] = v
        c[j][i][k] = -v

    put(h, e, e, 2)
    put(h, f, f, -2)
    put(e, f, h, 1)
    return c


def virasoro() -> LCAlgebra:
    return from_brackets(("L",), {(0, 0): (DEL + 2 * LAM,)})


def abelian(n: int) -> LCAlgebra:
    names = ("L",) if n == 1 else tuple(f"a{i}" for i in range(n))
    return LCAlgebra(names, tuple(tuple(zero_vector(n) for _ in range(n)) for _ in range(n)))


FIXTURE_NAMES = ("vir", "cur_sl2", "rank2_LW", "solvable_d1", "abelian(n)")


def fixture(name: str) -> LCAlgebra:
    if name == "vir":
        return virasoro()
    if name == "cur_sl2":
        return current_from_lie(sl2_constants(), SL2_NAMES)
    if name == "rank2_LW":
        return from_brackets(
            ("L", "W"),
            {(0, 0): (DEL + 2 * LAM, ZERO), (0, 1): (ZERO, DEL), (1, 1): (ZERO, ZERO)},
        )
    if name == "solvable_d1":
        one = Poly.const(1)
        return from_brackets(("a", "b"), {(0, 0): (ZERO, ZERO), (0, 1): (ZERO, one), (1, 1): (ZERO, ZERO)})
    m = re.fullmatch(r"abelian\((\d+)\)", name)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise AlgebraError("abelian fixture needs rank >= 1")
        return abelian(n)
    raise AlgebraError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}")


def adjoint(a: Element) -> "ConformalMap":
    """``(ad a)_lam``; column ``j`` is ``[a lam e_j]``."""
    from .cmap import ConformalMap

    R = a.algebra
    cols = [bracket_eval(a, g) for g in R.gens()]
    entries = tuple(tuple(cols[j][i] for j in range(R.rank)) for i in range(R.rank))
    return ConformalMap(entries, R)


__all__ = [
    "AlgebraError",
    "AxiomReport",
    "Element",
    "LCAlgebra",
    "abelian",
    "adjoint",
    "bracket_eval",
    "check_axioms",
    "current_from_lie",
    "direct_sum",
    "fixture",
    "from_brackets",
    "lam_coefficients",
    "mutate",
    "truncated_extension",
    "virasoro",
]

