"""Exact sparse multivariate polynomials over the rationals.

Every polynomial lives in the fixed variable universe ``del, lam, mu, nu, t1,
t2``.  Monomials are packed into a single integer (16 bits per exponent), so
multiplying monomials is integer addition.  Coefficients are Python ``int``
when integral and :class:`fractions.Fraction` otherwise; zero coefficients are
never stored.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

VARIABLES: tuple[str, ...] = ("del", "lam", "mu", "nu", "t1", "t2")
VAR_INDEX: dict[str, int] = {name: i for i, name in enumerate(VARIABLES)}

_BITS = 16
_MASK = (1 << _BITS) - 1
_NVARS = len(VARIABLES)

Rational = Union[int, Fraction]
Scalar = Union[int, Fraction]


def as_rational(c) -> Rational:
    """Coerce an int/Fraction/str to the canonical rational representation."""
    if isinstance(c, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, str):
        return as_rational(Fraction(c))
    raise TypeError(f"not a rational: {c!r}")


def pack(exponents: Iterable[int]) -> int:
    m = 0
    for i, e in enumerate(exponents):
        if e < 0 or e > _MASK:
            raise ValueError(f"exponent out of range: {e}")
        m |= e << (_BITS * i)
    return m


def unpack(m: int) -> tuple[int, ...]:
    return tuple((m >> (_BITS * i)) & _MASK for i in range(_NVARS))


def _exp(m: int, i: int) -> int:
    return (m >> (_BITS * i)) & _MASK


def _var_index(var) -> int:
    if isinstance(var, int):
        if not 0 <= var < _NVARS:
            raise ValueError(f"variable index out of range: {var}")
        return var
    try:
        return VAR_INDEX[var]
    except KeyError:
        raise ValueError(f"unknown variable {var!r}; universe is {VARIABLES}") from None


def monomial_key(m: int) -> tuple:
    """Graded-lex sort key (ascending) for a packed monomial; del is most significant."""
    e = unpack(m)
    return (sum(e), e)


class Poly:
    """Immutable sparse polynomial with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Rational] | None = None, *, _trusted: bool = False):
        if terms is None:
            self._terms: dict[int, Rational] = {}
        elif _trusted:
            self._terms = terms  # type: ignore[assignment]
        else:
            clean = {}
            for m, c in terms.items():
                c = as_rational(c)
                if c:
                    clean[int(m)] = c
            self._terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def const(cls, c) -> "Poly":
        c = as_rational(c)
        return cls({0: c} if c else {}, _trusted=True)

    @classmethod
    def var(cls, name: str, power: int = 1) -> "Poly":
        i = _var_index(name)
        return cls({power << (_BITS * i): 1}, _trusted=True)

    @classmethod
    def monomial(cls, exponents: Mapping[str, int], coeff=1) -> "Poly":
        e = [0] * _NVARS
        for name, k in exponents.items():
            e[_var_index(name)] = k
        c = as_rational(coeff)
        return cls({pack(e): c} if c else {}, _trusted=True)

    @classmethod
    def from_exponents(cls, terms: Iterable[tuple[Iterable[int], Rational]]) -> "Poly":
        """Build from ``(exponent-tuple, coefficient)`` pairs; exponent tuples may be short."""
        acc: dict[int, Rational] = {}
        for exps, c in terms:
            m = pack(exps)
            acc[m] = acc.get(m, 0) + as_rational(c)
        return cls(acc)

    # -- accessors --------------------------------------------------------

    @property
    def terms(self) -> Mapping[int, Rational]:
        """Packed-monomial -> coefficient table (read-only view by convention)."""
        return self._terms

    def items(self) -> Iterator[tuple[tuple[int, ...], Rational]]:
        """Yield ``(exponent tuple, coefficient)`` in descending graded-lex order."""
        for m in sorted(self._terms, key=monomial_key, reverse=True):
            yield unpack(m), self._terms[m]

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and 0 in self._terms)

    def constant_term(self) -> Rational:
        return self._terms.get(0, 0)

    def variables(self) -> frozenset[str]:
        used = 0
        for m in self._terms:
            used |= m
        return frozenset(v for i, v in enumerate(VARIABLES) if _exp(used, i))

    def degree(self, var) -> float | int:
        """Maximum exponent of ``var``; ``-inf`` for the zero polynomial."""
        if not self._terms:
            return -math.inf
        i = _var_index(var)
        return max(_exp(m, i) for m in self._terms)

    def total_degree(self) -> float | int:
        if not self._terms:
            return -math.inf
        return max(sum(unpack(m)) for m in self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -- comparison -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == Poly.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- ring operations --------------------------------------------------

    @staticmethod
    def _coerce(x) -> "Poly":
        if isinstance(x, Poly):
            return x
        return Poly.const(x)

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
                other = Poly.const(other)
            else:
                return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        acc = dict(self._terms)
        for m, c in other._terms.items():
            s = acc.get(m, 0) + c
            if s:
                acc[m] = s.numerator if type(s) is Fraction and s.denominator == 1 else s
            else:
                acc.pop(m, None)
        return Poly(acc, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
                other = Poly.const(other)
            else:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return Poly._coerce(other) - self

    def scale(self, c) -> "Poly":
        c = as_rational(c)
        if not c:
            return ZERO
        if c == 1:
            return self
        acc = {}
        for m, v in self._terms.items():
            s = v * c
            acc[m] = s.numerator if type(s) is Fraction and s.denominator == 1 else s
        return Poly(acc, _trusted=True)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
                return self.scale(other)
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return ZERO
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            ((mb, cb),) = b.items()
            if cb == 1:
                return Poly({ma + mb: ca for ma, ca in a.items()}, _trusted=True)
        acc: dict[int, Rational] = {}
        get = acc.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = ma + mb
                acc[m] = get(m, 0) + ca * cb
        out = {}
        for m, c in acc.items():
            if c:
                out[m] = c.numerator if type(c) is Fraction and c.denominator == 1 else c
        return Poly(out, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers need a non-negative integer exponent")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- substitution and evaluation -------------------------------------

    def substitute(self, bindings: Mapping[str, "Poly | Rational"]) -> "Poly":
        """Simultaneously replace variables by polynomials (a ring homomorphism)."""
        if not self._terms or not bindings:
            return self
        slots = {}
        for name, image in bindings.items():
            slots[_var_index(name)] = Poly._coerce(image)
        keep_mask = 0
        for i in range(_NVARS):
            if i not in slots:
                keep_mask |= _MASK << (_BITS * i)
        powers: dict[int, list[Poly]] = {i: [ONE] for i in slots}

        def power(i: int, e: int) -> Poly:
            cache = powers[i]
            while len(cache) <= e:
                cache.append(cache[-1] * slots[i])
            return cache[e]

        acc: dict[int, Rational] = {}
        for m, c in self._terms.items():
            factor = None
            for i in slots:
                e = _exp(m, i)
                if e:
                    pw = power(i, e)
                    factor = pw if factor is None else factor * pw
            rest = m & keep_mask
            if factor is None:
                acc[rest] = acc.get(rest, 0) + c
                continue
            for fm, fc in factor._terms.items():
                k = fm + rest
                acc[k] = acc.get(k, 0) + fc * c
        return Poly(acc)

    def evaluate(self, point: Mapping[str, Rational]) -> Rational:
        """Exact value at a rational point; every occurring variable must be bound."""
        if not self._terms:
            return 0
        vals = {}
        used = self.variables()
        for name in used:
            if name not in point:
                raise ValueError(f"unbound variable {name!r} in evaluate")
            vals[VAR_INDEX[name]] = as_rational(point[name])
        total: Rational = 0
        for m, c in self._terms.items():
            term = c
            for i, v in vals.items():
                e = _exp(m, i)
                if e:
                    term = term * v**e
            total += term
        return as_rational(total) if isinstance(total, Fraction) else total

    def coeff_extract(self, vars: Iterable[str]) -> dict[tuple[int, ...], "Poly"]:
        """Split into coefficients of monomials in ``vars``.

        Keys are exponent tuples aligned with ``vars`` sorted in universe
        order; values are polynomials in the remaining variables.
        """
        idx = sorted({_var_index(v) for v in vars})
        if not idx:
            raise ValueError("coeff_extract needs at least one variable")
        sel_mask = 0
        for i in idx:
            sel_mask |= _MASK << (_BITS * i)
        groups: dict[int, dict[int, Rational]] = {}
        for m, c in self._terms.items():
            groups.setdefault(m & sel_mask, {})[m & ~sel_mask] = c
        return {
            tuple(_exp(k, i) for i in idx): Poly(v, _trusted=True)
            for k, v in sorted(groups.items(), key=lambda kv: monomial_key(kv[0]))
        }

    def coefficients(self, var: str) -> dict[int, "Poly"]:
        """Coefficients with respect to a single variable, keyed by exponent."""
        return {k[0]: v for k, v in self.coeff_extract([var]).items()}

    def rename(self, mapping: Mapping[str, str]) -> "Poly":
        return self.substitute({a: Poly.var(b) for a, b in mapping.items()})

    # -- univariate arithmetic in one variable ----------------------------

    def leading(self, var: str = "del") -> tuple[int, "Poly"]:
        """Degree and leading coefficient with respect to ``var``."""
        coeffs = self.coefficients(var)
        d = max(coeffs)
        return d, coeffs[d]

    # -- text ------------------------------------------------------------

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exps, c in self.items():
            mono = "*".join(
                VARIABLES[i] if e == 1 else f"{VARIABLES[i]}^{e}"
                for i, e in enumerate(exps)
                if e
            )
            neg = c < 0
            mag = -c if neg else c
            if mono:
                body = mono if mag == 1 else f"{_rat_text(mag)}*{mono}"
            else:
                body = _rat_text(mag)
            parts.append(("- " if neg else "+ ", body))
        first_sign, first = parts[0]
        if first_sign == "- " and "^" in first.split("*")[0]:
            # "-del^2" would read back as (-del)^2; an explicit factor keeps the sign outside.
            first = "1*" + first
        out = ("-" if first_sign == "- " else "") + first
        for sign, body in parts[1:]:
            out += f" {sign}{body}"
        return out

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Poly({self.to_text()!r})"


def _rat_text(c: Rational) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


ZERO = Poly()
ONE = Poly.const(1)
DEL = Poly.var("del")
LAM = Poly.var("lam")
MU = Poly.var("mu")
NU = Poly.var("nu")


# Functional surface mirroring the method API.

def ring_op(which: str, p: Poly, q: Poly | None = None, c: Rational | None = None) -> Poly:
    if which == "add":
        return p + q
    if which == "sub":
        return p - q
    if which == "mul":
        return p * q
    if which == "neg":
        return -p
    if which == "scale":
        return p.scale(c)
    raise ValueError(f"unknown ring operation {which!r}")


def substitute(p: Poly, bindings: Mapping[str, Poly | Rational]) -> Poly:
    return p.substitute(bindings)


def coeff_extract(p: Poly, vars: Iterable[str]) -> dict[tuple[int, ...], Poly]:
    return p.coeff_extract(vars)


def degree(p: Poly, var: str) -> float | int:
    return p.degree(var)


def evaluate(p: Poly, point: Mapping[str, Rational]) -> Rational:
    return p.evaluate(point)


def udivmod(a: Poly, b: Poly, var: str = "del") -> tuple[Poly, Poly]:
    """Division with remainder of univariate polynomials in ``var``."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    others = (a.variables() | b.variables()) - {var}
    if others:
        raise ValueError(f"udivmod expects univariate input in {var}, got {sorted(others)}")
    db, lb = b.leading(var)
    lc = lb.constant_term()
    x = Poly.var(var)
    q = ZERO
    r = a
    while not r.is_zero():
        dr, lr = r.leading(var)
        if dr < db:
            break
        t = (x ** (dr - db)).scale(Fraction(lr.constant_term()) / lc)
        q = q + t
        r = r - t * b
    return q, r


def monic(p: Poly, var: str = "del") -> Poly:
    if p.is_zero():
        return p
    _, lc = p.leading(var)
    return p.scale(Fraction(1) / Fraction(lc.constant_term()))
