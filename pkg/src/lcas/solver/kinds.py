"""Derivation kinds and degree bounds."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..lca import LCAlgebra
from ..poly import Rational, as_rational

TAGS = ("cder", "qder", "gder", "centroid", "qc", "zder", "abg", "center")
_ARITY = {"qder": 2, "gder": 3}


@dataclass(frozen=True)
class ABGParams:
    alpha: Rational
    beta: Rational
    gamma: Rational

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))

    def scaled(self, c) -> "ABGParams":
        c = as_rational(c)
        return ABGParams(self.alpha * c, self.beta * c, self.gamma * c)

    def __str__(self) -> str:
        return ",".join(_rat(x) for x in (self.alpha, self.beta, self.gamma))


def _rat(x: Rational) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return str(x)


@dataclass(frozen=True)
class DerivationKind:
    tag: str
    params: ABGParams | None = None

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown derivation kind {self.tag!r}; expected one of {TAGS}")
        if (self.tag == "abg") != (self.params is not None):
            raise ValueError("abg kinds carry ABGParams; other kinds carry none")

    @property
    def arity(self) -> int:
        return _ARITY.get(self.tag, 1)

    @classmethod
    def abg(cls, alpha, beta, gamma) -> "DerivationKind":
        return cls("abg", ABGParams(alpha, beta, gamma))

    @classmethod
    def parse(cls, text: str) -> "DerivationKind":
        """Parse ``cder`` or ``abg(2,1,1)`` / ``abg(1/2,1,0)``."""
        text = text.strip()
        m = re.fullmatch(r"abg\(([^,]+),([^,]+),([^,]+)\)", text.replace(" ", ""))
        if m:
            return cls.abg(*(Fraction(g) for g in m.groups()))
        return cls(text)

    def __str__(self) -> str:
        return f"abg({self.params})" if self.params is not None else self.tag


def kind(tag: str | DerivationKind, *params) -> DerivationKind:
    if isinstance(tag, DerivationKind):
        return tag
    if params:
        if tag != "abg":
            raise ValueError("only abg takes parameters")
        return DerivationKind.abg(*params)
    return DerivationKind.parse(tag)


@dataclass(frozen=True)
class DegreeBound:
    """Inclusive per-entry degree bounds for the ansatz.

    ``max_del``/``max_lam`` bound the map being classified (first slot).
    Partner slots of qder/gder default to the first-slot bounds enlarged by
    the structure table's total degree, because a partner of a bounded map
    generally needs that much more room.
    """

    max_del: int
    max_lam: int
    partner_del: int | None = None
    partner_lam: int | None = None

    def __post_init__(self):
        for v in (self.max_del, self.max_lam, self.partner_del, self.partner_lam):
            if v is not None and (not isinstance(v, int) or v < 0):
                raise ValueError("degree bounds must be non-negative integers")

    def slot_bounds(self, R: LCAlgebra, arity: int) -> tuple[tuple[int, int], ...]:
        first = (self.max_del, self.max_lam)
        if arity == 1:
            return (first,)
        slack = R.table_degree()
        pd = self.max_del + slack if self.partner_del is None else self.partner_del
        pl = self.max_lam + slack if self.partner_lam is None else self.partner_lam
        return (first,) + ((pd, pl),) * (arity - 1)

    def uniform(self) -> "DegreeBound":
        """Same bounds with partner slots pinned to the first-slot bounds."""
        return DegreeBound(self.max_del, self.max_lam, self.max_del, self.max_lam)

    def as_dict(self) -> dict:
        out = {"max_del": self.max_del, "max_lam": self.max_lam}
        if self.partner_del is not None:
            out["partner_del"] = self.partner_del
        if self.partner_lam is not None:
            out["partner_lam"] = self.partner_lam
        return out
