"""JSON algebra files: generator names plus bracket values as expression text.

::

    {"generators": ["L", "W"],
     "brackets": {"L,L": ["(del + 2*lam)*L"], "L,W": ["del*W"], "W,W": []}}

Each bracket value is a list of terms that are summed.  Pairs ``i <= j``
suffice; a given ``j,i`` entry must agree with the skew image of ``i,j``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from .expr import IDENT, RESERVED, ExprError, evaluate_expr, vector_terms
from .lca import AlgebraError, LCAlgebra, from_brackets, zero_vector


class AlgebraFileError(ValueError):
    """Malformed algebra file."""


def algebra_from_dict(data: Mapping[str, Any]) -> LCAlgebra:
    if not isinstance(data, Mapping):
        raise AlgebraFileError("algebra file must be a JSON object")
    extra = set(data) - {"generators", "brackets"}
    if extra:
        raise AlgebraFileError(f"unknown top-level keys: {sorted(extra)}")
    names = data.get("generators")
    if not isinstance(names, list) or not names:
        raise AlgebraFileError("'generators' must be a non-empty list")
    for g in names:
        if not isinstance(g, str) or not IDENT.fullmatch(g):
            raise AlgebraFileError(f"invalid generator name {g!r}")
        if g in RESERVED:
            raise AlgebraFileError(f"generator name {g!r} is reserved")
    if len(set(names)) != len(names):
        raise AlgebraFileError("generator names must be distinct")
    raw = data.get("brackets", {})
    if not isinstance(raw, Mapping):
        raise AlgebraFileError("'brackets' must be an object")
    index = {g: i for i, g in enumerate(names)}
    brackets = {}
    for key, terms in raw.items():
        parts = [s.strip() for s in key.split(",")]
        if len(parts) != 2 or any(p not in index for p in parts):
            raise AlgebraFileError(f"bracket key {key!r} must be 'gi,gj' with known generators")
        if isinstance(terms, str):
            terms = [terms]
        if not isinstance(terms, list) or not all(isinstance(t, str) for t in terms):
            raise AlgebraFileError(f"bracket {key!r} must map to a list of term texts")
        vec = zero_vector(len(names))
        for t in terms:
            try:
                v = evaluate_expr(t, names)
            except ExprError as e:
                raise ExprError(f"in bracket {key!r}: {e.message}", e.line, e.column) from None
            vec = tuple(a + b for a, b in zip(vec, v))
        pair = (index[parts[0]], index[parts[1]])
        if pair in brackets:
            raise AlgebraFileError(f"bracket {key!r} given twice")
        brackets[pair] = vec
    try:
        return from_brackets(tuple(names), brackets)
    except AlgebraError as e:
        raise AlgebraFileError(str(e)) from None


def algebra_to_dict(R: LCAlgebra) -> dict:
    brackets = {}
    for i in range(R.rank):
        for j in range(i, R.rank):
            brackets[f"{R.names[i]},{R.names[j]}"] = vector_terms(R.table[i][j], R.names)
    return {"generators": list(R.names), "brackets": brackets}


def loads(text: str) -> LCAlgebra:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise AlgebraFileError(f"invalid JSON: {e.msg} at line {e.lineno}, column {e.colno}") from None
    return algebra_from_dict(data)


def load(path: str | Path) -> LCAlgebra:
    return loads(Path(path).read_text(encoding="utf-8"))


def dumps(R: LCAlgebra) -> str:
    return json.dumps(algebra_to_dict(R), indent=2) + "\n"
