"""JSON encoding of the result types.

Rationals are written as strings (``"3/5"``, integers as ``"3"``) and never
as floats.  ``decode(encode(x)) == x`` holds exactly for every supported
type.  With ``approx_decimals`` set, each rational-valued field ``key`` gets
a sibling ``key_approx`` holding rounded decimal strings; decoders ignore it.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional

from .configurations import Lineup
from .constraints import SymbolicInequality
from .errors import StructuralError
from .gok import GapResult, WeightedEnergyResult
from .polytope import ApproximationPair, HalfspaceSystem, MembershipCertificate, VertexSet, WeightVector
from .rational import as_rational, fmt, to_decimal_str

RATIONAL_KEYS = frozenset({
    "weights", "vertices", "witness_h", "simplex_coefficients", "separating_weights", "margin",
    "bound", "value", "energy", "minimizer_occupation", "gaps", "derivative_gaps", "v_minus",
    "v_plus", "lambda", "slack", "h", "occupations", "support_minimum", "polygon", "points",
})


def q(x) -> str:
    return fmt(Fraction(x))


def qv(xs) -> list:
    return [q(x) for x in xs]


def _r(s) -> Fraction:
    return as_rational(s)


def _rv(xs) -> tuple:
    return tuple(as_rational(s) for s in xs)


def _opt(f, x):
    return None if x is None else f(x)


def _lineup(lu: Lineup) -> dict:
    return {"type": "Lineup", "configurations": [list(c) for c in lu.sequence], "witness_h": qv(lu.witness_h)}


def _halfspace_rows(rows) -> list:
    return [{"coeffs": list(a), "bound": q(b)} for a, b in rows]


def to_dict(obj) -> dict:
    if isinstance(obj, Lineup):
        return _lineup(obj)
    if isinstance(obj, VertexSet):
        return {
            "type": "VertexSet",
            "n": obj.n,
            "d": obj.d,
            "weights": qv(obj.weight.weights),
            "vertices": [qv(v) for v in obj.vertices],
            "provenance": [_lineup(lu) for lu in obj.provenance],
            "lineup_count": obj.lineup_count,
        }
    if isinstance(obj, MembershipCertificate):
        return {
            "type": "MembershipCertificate",
            "inside": obj.inside,
            "simplex_coefficients": _opt(qv, obj.simplex_coefficients),
            "violated_prefix": obj.violated_prefix,
            "separating_weights": _opt(qv, obj.separating_weights),
            "margin": _opt(q, obj.margin),
        }
    if isinstance(obj, HalfspaceSystem):
        return {
            "type": "HalfspaceSystem",
            "n": obj.n,
            "d": obj.d,
            "includes_ordering": obj.includes_ordering,
            "inequalities": _halfspace_rows(obj.inequalities),
            "ordering": _halfspace_rows(obj.ordering),
        }
    if isinstance(obj, SymbolicInequality):
        return {"type": "SymbolicInequality", **obj.to_dict()}
    if isinstance(obj, WeightedEnergyResult):
        return {
            "type": "WeightedEnergyResult",
            "value": q(obj.value),
            "sorted_config_energies": [
                {"configuration": list(c), "energy": q(e)} for c, e in obj.sorted_config_energies
            ],
            "minimizer_occupation": qv(obj.minimizer_occupation),
            "tie": obj.tie,
        }
    if isinstance(obj, GapResult):
        return {
            "type": "GapResult",
            "gaps": qv(obj.gaps),
            "derivative_gaps": qv(obj.derivative_gaps),
            "one_sided": list(obj.one_sided),
            "tie": obj.tie,
        }
    if isinstance(obj, ApproximationPair):
        return {"type": "ApproximationPair", "v_minus": qv(obj.v_minus), "v_plus": qv(obj.v_plus)}
    raise StructuralError(f"no JSON encoding for {type(obj).__name__}")


def _lineup_from(d: dict) -> Lineup:
    return Lineup(tuple(tuple(int(i) for i in c) for c in d["configurations"]), _rv(d["witness_h"]))


def _rows_from(rows) -> tuple:
    return tuple((tuple(int(x) for x in r["coeffs"]), _r(r["bound"])) for r in rows)


def from_dict(d: dict) -> Any:
    kind = d.get("type")
    if kind == "Lineup":
        return _lineup_from(d)
    if kind == "VertexSet":
        return VertexSet(
            int(d["n"]),
            int(d["d"]),
            WeightVector(_rv(d["weights"])),
            tuple(_rv(v) for v in d["vertices"]),
            tuple(_lineup_from(x) for x in d["provenance"]),
            int(d["lineup_count"]),
        )
    if kind == "MembershipCertificate":
        return MembershipCertificate(
            bool(d["inside"]),
            _opt(_rv, d.get("simplex_coefficients")),
            d.get("violated_prefix"),
            _opt(_rv, d.get("separating_weights")),
            _opt(_r, d.get("margin")),
        )
    if kind == "HalfspaceSystem":
        return HalfspaceSystem(
            _rows_from(d["inequalities"]),
            bool(d["includes_ordering"]),
            _rows_from(d["ordering"]),
            int(d["n"]),
            int(d["d"]),
        )
    if kind == "SymbolicInequality":
        return SymbolicInequality.from_dict(d)
    if kind == "WeightedEnergyResult":
        return WeightedEnergyResult(
            _r(d["value"]),
            tuple((tuple(int(i) for i in x["configuration"]), _r(x["energy"])) for x in d["sorted_config_energies"]),
            _rv(d["minimizer_occupation"]),
            bool(d["tie"]),
        )
    if kind == "GapResult":
        return GapResult(_rv(d["gaps"]), _rv(d["derivative_gaps"]), tuple(bool(x) for x in d["one_sided"]), bool(d["tie"]))
    if kind == "ApproximationPair":
        return ApproximationPair(_rv(d["v_minus"]), _rv(d["v_plus"]))
    raise StructuralError(f"unknown JSON type tag {kind!r}")


def _approx(value, digits: int):
    if isinstance(value, str):
        return to_decimal_str(as_rational(value), digits)
    if isinstance(value, list):
        return [_approx(v, digits) for v in value]
    if isinstance(value, dict):
        return with_approx(value, digits)
    return value


def with_approx(data, digits: Optional[int]):
    """Copy of ``data`` with ``*_approx`` siblings next to rational fields."""
    if digits is None:
        return data
    if isinstance(data, list):
        return [with_approx(x, digits) for x in data]
    if not isinstance(data, dict):
        return data
    out = {}
    for k, v in data.items():
        out[k] = with_approx(v, digits)
        if k in RATIONAL_KEYS and v is not None:
            out[k + "_approx"] = _approx(v, digits)
    return out


def dumps(data, approx_decimals: Optional[int] = None) -> str:
    if not isinstance(data, (dict, list)):
        data = to_dict(data)
    return json.dumps(with_approx(data, approx_decimals), indent=2, ensure_ascii=False)


def loads(text: str) -> Any:
    return from_dict(json.loads(text))
