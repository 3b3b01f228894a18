"""
JSON-ready encoding of polynomials and certificates.

Rationals are strings (``"p/q"``), perturbed scalars ``"p/q+e*eta"``, and
``"inf"`` marks an infinite coefficient. Parse errors carry the field path.
"""

from __future__ import annotations

from typing import Any, Dict, List, Mapping, Optional

from ..algebra.polynomials import Point, TropPoly
from ..algebra.scalars import format_rational, format_scalar, parse_rational, parse_scalar
from ..errors import ModelParseError
from ..geometry.prevariety import Prevariety
from .certificates import Certificate


def serialize_poly(f: TropPoly) -> List[Dict[str, Any]]:
    return [{"exponents": list(m.exponents), "coeff": format_scalar(c)} for m, c in f.terms]


def parse_poly(data: Any, field: str = "poly") -> TropPoly:
    if not isinstance(data, list) or not data:
        raise ModelParseError("expected a nonempty list of terms", field=field)
    terms = []
    for i, term in enumerate(data):
        path = f"{field}[{i}]"
        if not isinstance(term, Mapping) or "exponents" not in term:
            raise ModelParseError("term needs 'exponents'", field=path)
        exponents = term["exponents"]
        if not isinstance(exponents, list) or not all(isinstance(e, int) and not isinstance(e, bool) for e in exponents):
            raise ModelParseError("exponents must be a list of integers", field=f"{path}.exponents")
        try:
            coeff = parse_scalar(str(term.get("coeff", "0")))
        except ValueError as exc:
            raise ModelParseError(str(exc), field=f"{path}.coeff") from exc
        terms.append((tuple(exponents), coeff))
    try:
        return TropPoly.from_terms(terms)
    except ValueError as exc:
        raise ModelParseError(str(exc), field=field) from exc


def serialize_certificate(cert: Certificate) -> Dict[str, Any]:
    return {
        "members": [{"poly": serialize_poly(f), "b": format_scalar(b)} for f, b in cert.members],
        "witnesses": [
            {"point": [format_rational(c) for c in point.coords], "minimizer": j} for point, j in cert.witnesses
        ],
    }


def parse_certificate(data: Any, prevariety: Optional[Prevariety] = None, field: str = "certificate") -> Certificate:
    if not isinstance(data, Mapping):
        raise ModelParseError("certificate must be an object", field=field)
    for key in ("members", "witnesses"):
        if not isinstance(data.get(key), list):
            raise ModelParseError(f"missing list '{key}'", field=f"{field}.{key}")
    members = []
    for i, member in enumerate(data["members"]):
        path = f"{field}.members[{i}]"
        if not isinstance(member, Mapping) or "poly" not in member:
            raise ModelParseError("member needs 'poly'", field=path)
        try:
            b = parse_scalar(str(member.get("b", "0")))
        except ValueError as exc:
            raise ModelParseError(str(exc), field=f"{path}.b") from exc
        members.append((parse_poly(member["poly"], f"{path}.poly"), b))
    witnesses = []
    for i, witness in enumerate(data["witnesses"]):
        path = f"{field}.witnesses[{i}]"
        if not isinstance(witness, Mapping) or "point" not in witness or "minimizer" not in witness:
            raise ModelParseError("witness needs 'point' and 'minimizer'", field=path)
        try:
            point = Point(tuple(parse_rational(str(c)) for c in witness["point"]))
        except (TypeError, ValueError) as exc:
            raise ModelParseError(str(exc), field=f"{path}.point") from exc
        witnesses.append((point, witness["minimizer"]))
    try:
        return Certificate(tuple(members), tuple(witnesses), prevariety)
    except (TypeError, ValueError) as exc:
        raise ModelParseError(str(exc), field=field) from exc
