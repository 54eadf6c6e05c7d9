"""JSON encodings. Rationals are written as strings ("p/q" or "n")."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .cohomology import SurfaceModel, build_surface
from .diagonal import DiagonalDecomposition
from .errors import ValidationError
from .ktheory import KClass, from_chern, odd_class
from .spectral import CurveKClass


def frac_str(x) -> str:
    return str(Fraction(x))


def parse_frac(s) -> Fraction:
    try:
        return Fraction(str(s).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"not a rational number: {s!r}") from exc


def kclass_to_json(v: KClass) -> dict:
    if v.is_even:
        return {"parity": "even", "r": v.r, "c1": list(v.c1), "c2": v.c2,
                "ch2": frac_str(v.ch2)}
    return {"parity": "odd", "h1": list(v.h1), "h3": list(v.h3)}


def kclass_from_json(S: SurfaceModel, data: dict) -> KClass:
    try:
        if data.get("parity", "even") == "odd":
            return odd_class(S, data["h1"], data["h3"])
        return from_chern(S, int(data["r"]), data["c1"], int(data["c2"]))
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed K-class record: {exc}") from exc


def curve_to_json(x: CurveKClass) -> dict:
    if x.parity == "even":
        return {"parity": "even", "g": x.g, "rank": x.rank, "degree": x.degree}
    return {"parity": "odd", "g": x.g, "odd": list(x.odd)}


def decomposition_to_json(dec: DiagonalDecomposition) -> dict:
    return {
        "surface": dec.surface.to_spec(),
        "pairs": [{"coeff": c, "x": kclass_to_json(x), "y": kclass_to_json(y)}
                  for c, x, y in dec.pairs],
    }


def decomposition_from_json(data: dict) -> DiagonalDecomposition:
    try:
        S = build_surface(data["surface"])
        pairs = tuple((int(p["coeff"]), kclass_from_json(S, p["x"]), kclass_from_json(S, p["y"]))
                      for p in data["pairs"])
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed decomposition record: {exc}") from exc
    return DiagonalDecomposition(S, pairs)


def _default(obj: Any):
    if isinstance(obj, Fraction):
        return frac_str(obj)
    if isinstance(obj, tuple):
        return list(obj)
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(report: dict) -> str:
    """Deterministic: insertion order is kept, so reports are byte-stable."""
    return json.dumps(report, indent=2, default=_default, ensure_ascii=False)
