"""
Model Files

A model is a JSON (or YAML) document describing exactly one geometry and the
parameters of a run:

    {"segments": [{"base": ["0", "0"], "dir": [1, -1], "t": ["-inf", "inf"]}],
     "grid": "simplex",
     "parameters": {"k_min": 1, "k_max": 4}}

Geometries: ``polyhedra`` (H-representations), ``segments`` (intervals with
open/closed endpoints), ``star`` (apex and directions) or ``points`` (a finite
point set). Rationals are exact: integers or ``"p/q"`` strings; floats are
rejected. Non-primitive directions are rescaled with a warning. Parse errors
name the offending field and, when it can be located, the source line.
"""

from __future__ import annotations

import hashlib
import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import IO, Annotated, Any, Dict, List, Literal, Optional, Set, Tuple, Union

import yaml
from pydantic import (
    AfterValidator,
    BaseModel,
    ConfigDict,
    Field,
    StrictBool,
    StrictInt,
    StrictStr,
    ValidationError,
    model_validator,
)

from ..algebra.polynomials import Point
from ..algebra.scalars import format_rational, parse_rational
from ..errors import ModelParseError
from ..geometry.linalg import primitive_integer_vector
from ..geometry.polyhedra import Halfspace, Polyhedron
from ..geometry.prevariety import Prevariety, Segment, Star, star_to_prevariety
from ..independence.certificates import Certificate
from ..independence.serialization import parse_certificate

logger = logging.getLogger(__name__)

GEOMETRIES = ("polyhedra", "segments", "star", "points")
_INFINITE = ("inf", "+inf", "-inf")
_LOC_TAGS = ("int", "str", "bool")


def _to_fraction(value: Union[int, str]) -> Fraction:
    return Fraction(value) if isinstance(value, int) else parse_rational(value)


def _checked_rational(value: Union[int, str]) -> Union[int, str]:
    _to_fraction(value)
    return value


def _checked_endpoint(value: Union[int, str]) -> Union[int, str]:
    if not (isinstance(value, str) and value.strip() in _INFINITE):
        _to_fraction(value)
    return value


Rational = Annotated[Union[StrictInt, StrictStr], AfterValidator(_checked_rational)]
Endpoint = Annotated[Union[StrictInt, StrictStr], AfterValidator(_checked_endpoint)]


def _endpoint(value: Union[int, str]) -> Optional[Fraction]:
    if isinstance(value, str) and value.strip() in _INFINITE:
        return None
    return _to_fraction(value)


def _canonical(value: Fraction) -> Union[int, str]:
    return int(value) if value.denominator == 1 else format_rational(value)


def _normalize_direction(direction: List[Union[int, str]], what: str) -> Tuple[List[int], Fraction]:
    primitive, factor = primitive_integer_vector([_to_fraction(d) for d in direction])
    if factor != 1:
        logger.warning("%s direction %s rescaled to primitive %s", what, list(direction), list(primitive))
    return list(primitive), factor


class _Spec(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ConstraintSpec(_Spec):
    normal: List[Rational] = Field(min_length=1)
    rel: Literal[">=", "="] = ">="
    const: Rational = 0

    def to_halfspace(self) -> Halfspace:
        return Halfspace(tuple(_to_fraction(a) for a in self.normal), _to_fraction(self.const), self.rel)


class PolyhedronSpec(_Spec):
    constraints: List[ConstraintSpec] = Field(min_length=1)

    def to_polyhedron(self) -> Polyhedron:
        return Polyhedron(tuple(c.to_halfspace() for c in self.constraints), len(self.constraints[0].normal))


class SegmentSpec(_Spec):
    """``t`` holds the parameter interval; ``"-inf"`` / ``"inf"`` leave a side unbounded."""

    base: List[Rational] = Field(min_length=1)
    dir: List[Rational] = Field(min_length=1)
    t: Tuple[Endpoint, Endpoint] = ("-inf", "inf")
    closed: Tuple[StrictBool, StrictBool] = (True, True)

    @model_validator(mode="after")
    def _normalize(self) -> "SegmentSpec":
        if len(self.base) != len(self.dir):
            raise ValueError("base and dir differ in length")
        lo, hi = self.t
        if isinstance(lo, str) and lo.strip() in ("inf", "+inf"):
            raise ValueError("the lower endpoint cannot be +inf")
        if isinstance(hi, str) and hi.strip() == "-inf":
            raise ValueError("the upper endpoint cannot be -inf")
        t_lo, t_hi = _endpoint(lo), _endpoint(hi)
        if t_lo is not None and t_hi is not None and not t_lo < t_hi:
            raise ValueError(f"empty parameter interval [{lo}, {hi}]")
        primitive, factor = _normalize_direction(self.dir, "Segment")
        if factor != 1:
            self.t = tuple(v if _endpoint(v) is None else _canonical(_endpoint(v) / factor) for v in self.t)
        self.dir = primitive
        return self

    def to_segment(self) -> Segment:
        lo, hi = (_endpoint(v) for v in self.t)
        return Segment(
            Point(tuple(_to_fraction(b) for b in self.base)),
            tuple(int(d) for d in self.dir),
            lo,
            hi,
            self.closed[0],
            self.closed[1],
        )


class StarSpec(_Spec):
    apex: List[Rational] = Field(min_length=1)
    dirs: List[List[Rational]] = Field(min_length=1)

    @model_validator(mode="after")
    def _normalize(self) -> "StarSpec":
        dirs = []
        for d in self.dirs:
            if len(d) != len(self.apex):
                raise ValueError(f"direction {d} does not match the apex dimension {len(self.apex)}")
            primitive, _ = _normalize_direction(d, "Star")
            dirs.append(primitive)
        if len({tuple(d) for d in dirs}) != len(dirs):
            raise ValueError("star directions must be pairwise distinct after normalization")
        self.dirs = dirs
        return self

    def to_star(self) -> Star:
        return Star(Point(tuple(_to_fraction(a) for a in self.apex)), tuple(tuple(d) for d in self.dirs))


class Parameters(_Spec):
    k_min: int = Field(1, ge=0)
    k_max: int = Field(4, ge=0)
    r: int = Field(2, ge=1)
    budget: Optional[int] = Field(None, ge=1)
    seed: int = 0

    @model_validator(mode="after")
    def _k_range(self) -> "Parameters":
        if self.k_min > self.k_max:
            raise ValueError(f"empty k range [{self.k_min}, {self.k_max}]")
        return self


class Model(_Spec):
    """Validated model: exactly one geometry plus grid, parameters and format."""

    name: Optional[str] = None
    polyhedra: Optional[List[PolyhedronSpec]] = Field(None, min_length=1)
    segments: Optional[List[SegmentSpec]] = Field(None, min_length=1)
    star: Optional[StarSpec] = None
    points: Optional[List[List[Rational]]] = Field(None, min_length=1)
    grid: Optional[Literal["simplex", "box"]] = None
    parameters: Parameters = Field(default_factory=Parameters)
    format: Literal["csv", "json"] = "csv"
    certificate: Optional[Dict[str, Any]] = None

    @model_validator(mode="after")
    def _one_geometry(self) -> "Model":
        present = [g for g in GEOMETRIES if getattr(self, g) is not None]
        if len(present) != 1:
            raise ValueError(f"exactly one of {', '.join(GEOMETRIES)} is required, found {present or 'none'}")
        if len(self.dimensions) != 1:
            raise ValueError(f"mixed ambient dimensions {sorted(self.dimensions)}")
        return self

    @property
    def geometry(self) -> str:
        return next(g for g in GEOMETRIES if getattr(self, g) is not None)

    @property
    def dimensions(self) -> Set[int]:
        if self.polyhedra is not None:
            return {len(c.normal) for p in self.polyhedra for c in p.constraints}
        if self.segments is not None:
            return {len(s.base) for s in self.segments}
        if self.star is not None:
            return {len(self.star.apex)}
        return {len(p) for p in self.points or []}

    @property
    def n(self) -> int:
        return next(iter(self.dimensions))

    def to_star(self) -> Optional[Star]:
        return self.star.to_star() if self.star is not None else None

    def prevariety(self) -> Prevariety:
        if self.polyhedra is not None:
            return Prevariety.from_polyhedra([p.to_polyhedron() for p in self.polyhedra], self.n)
        if self.segments is not None:
            return Prevariety.from_segments([s.to_segment() for s in self.segments])
        if self.star is not None:
            return star_to_prevariety(self.star.to_star())
        return Prevariety.from_points([Point(tuple(_to_fraction(c) for c in p)) for p in self.points or []])

    def to_certificate(self, V: Optional[Prevariety] = None) -> Certificate:
        if self.certificate is None:
            raise ModelParseError("the model carries no certificate", field="certificate")
        return parse_certificate(self.certificate, V if V is not None else self.prevariety())


def _line_of(text: str, loc: Tuple[Union[int, str], ...]) -> Optional[int]:
    """Line of the innermost named field of ``loc`` that occurs in ``text``."""

    position = -1
    for part in loc:
        if not isinstance(part, str):
            continue
        start = max(position, 0)
        found = text.find(f'"{part}"', start)
        if found < 0:
            found = text.find(f"{part}:", start)
        if found >= 0:
            position = found
    return text.count("\n", 0, position) + 1 if position >= 0 else None


def _decode(text: str, source: str) -> Any:
    if source.endswith((".yaml", ".yml")):
        try:
            return yaml.safe_load(text)
        except yaml.YAMLError as exc:
            mark = getattr(exc, "problem_mark", None)
            raise ModelParseError(f"malformed YAML: {exc}", line=mark.line + 1 if mark else None) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelParseError(f"malformed JSON: {exc.msg}", line=exc.lineno) from exc


def parse_model_text(text: str, source: str = "<string>") -> Model:
    data = _decode(text, source)
    if not isinstance(data, dict):
        raise ModelParseError("a model must be an object", line=1)
    try:
        return Model.model_validate(data)
    except ValidationError as exc:
        error = exc.errors()[0]
        loc = tuple(
            part
            for part in error["loc"]
            if not (isinstance(part, str) and (part in _LOC_TAGS or "[" in part or part.startswith("function-")))
        )
        field = ".".join(str(part) for part in loc) or None
        if error["type"] == "missing":
            message, line = f"missing field '{loc[-1]}'", _line_of(text, loc[:-1])
        elif error["type"] == "extra_forbidden":
            message, line = f"unknown field '{loc[-1]}'", _line_of(text, loc)
        else:
            message, line = error["msg"], _line_of(text, loc)
        raise ModelParseError(message, field=field, line=line) from exc


def parse_model(source: Union[str, Path, IO[str]]) -> Model:
    """Parse a model from a path or an open text stream."""

    if hasattr(source, "read"):
        return parse_model_text(source.read(), getattr(source, "name", "<stream>"))
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelParseError(f"cannot read model file: {exc.strerror or exc}", field=str(path)) from exc
    return parse_model_text(text, path.name)


def serialize_model(model: Model) -> Dict[str, Any]:
    return model.model_dump(mode="json", exclude_none=True)


def model_digest(text: Union[str, bytes]) -> str:
    data = text.encode("utf-8") if isinstance(text, str) else text
    return hashlib.sha256(data).hexdigest()
