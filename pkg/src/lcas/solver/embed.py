"""The map from quasiderivations of R to conformal derivations of R (x) tQ[t]/(t^3)."""

from __future__ import annotations

from typing import Iterable, Sequence

from ..cmap import ConformalMap, act
from ..lca import AlgebraError, Element, LCAlgebra, truncated_extension
from ..modules import SmithReport, complement_test, derived_subalgebra
from ..poly import ZERO
from .kinds import DegreeBound, DerivationKind
from .spaces import SolutionSpace, from_items


class NoFreeComplement(AlgebraError):
    """``[R, R]`` has no free complement, so the embedding is undefined."""

    def __init__(self, factors):
        self.factors = tuple(factors)
        text = ", ".join(f.to_text() for f in self.factors)
        super().__init__(f"R/[R,R] has torsion (invariant factor {text}); no free complement to [R,R]")


def decomposition(R: LCAlgebra) -> SmithReport:
    """Smith report for ``[R, R]`` inside ``R``; raises when no free complement exists."""
    report = complement_test(R, derived_subalgebra(R))
    if not report.quotient_free:
        raise NoFreeComplement(report.torsion)
    return report


def quasi_embed(
    R: LCAlgebra,
    q: Sequence[ConformalMap],
    *,
    extension: LCAlgebra | None = None,
    report: SmithReport | None = None,
) -> ConformalMap:
    """Block map ``a t + b t^2 + u t^2 -> D(a) t + D'(b) t^2`` on the truncated extension.

    ``q`` is a quasiderivation pair ``(D, D')``; ``b`` is the ``[R,R]``-part
    and ``u`` the complement part of an element of ``R``.
    """
    D, Dp = q
    if not (D.algebra.same(R) and Dp.algebra.same(R)):
        raise AlgebraError("maps belong to a different algebra")
    report = report or decomposition(R)
    Rt = extension or truncated_extension(R)
    n = R.rank
    cols = []
    for i in range(n):
        cols.append(tuple(D.column(i)) + (ZERO,) * n)
    for j in range(n):
        inside, _ = report.split(R.gen(j))
        image = act(Dp.entries, inside)
        cols.append((ZERO,) * n + tuple(image))
    entries = tuple(tuple(cols[c][r] for c in range(2 * n)) for r in range(2 * n))
    return ConformalMap(entries, Rt)


def embed_span(R: LCAlgebra, qspace: SolutionSpace, bounds: DegreeBound | None = None) -> SolutionSpace:
    """Span of the images of a quasiderivation basis, as a cder-layout space on the extension."""
    if qspace.kind.tag != "qder" or qspace.arity != 2:
        raise ValueError("embed_span takes the tuple space of qder")
    report = decomposition(R)
    Rt = truncated_extension(R)
    images = [quasi_embed(R, pair, extension=Rt, report=report) for pair in qspace.basis]
    if bounds is None:
        dd = max([m.degrees()[0] for m in images] + [qspace.bounds.max_del])
        dl = max([m.degrees()[1] for m in images] + [qspace.bounds.max_lam])
        bounds = DegreeBound(dd, dl)
    return from_items(DerivationKind("cder"), Rt, bounds, images)


def element_images(maps: Iterable[ConformalMap]) -> list[Element]:
    """Every lam-coefficient of every column, as elements (used for image ideals)."""
    out = []
    for m in maps:
        R = m.algebra
        for j in range(R.rank):
            by_power: dict[int, list] = {}
            for k, p in enumerate(m.column(j)):
                for e, c in p.coefficients("lam").items():
                    by_power.setdefault(e, [ZERO] * R.rank)[k] = c
            out.extend(Element(tuple(v), R) for v in by_power.values())
    return out
