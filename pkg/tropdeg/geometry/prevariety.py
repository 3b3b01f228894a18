"""
Min-Plus Prevarieties, Segments and Stars

A min-plus prevariety is a finite union of rational polyhedra. One-dimensional
prevarieties additionally carry an explicit interval decomposition (segments,
rays, lines and isolated points), which is what the Hilbert-function searches
and the degree machinery work on.

Features:
- Segment: base + t * primitive integer direction over an interval with
  open/closed endpoints; rational directions rescaled with a warning
- Star: apex plus pairwise distinct primitive directions
- Prevariety: pieces, segments, isolated points, branch count
- decompose_equations: minimizer-cell decomposition of f_i = g_i systems
- star_to_prevariety, translation and coordinate permutation

Usage:
    V = decompose_equations([(TropPoly.from_terms([((1, 0), 0), ((0, 1), 0)]),
                              TropPoly.monomial((0, 0)))])
    V.contains(Point.of([0, 3]))     # True
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from ..algebra.polynomials import Point, TropPoly
from ..algebra.scalars import to_fraction
from ..errors import DimensionMismatchError, EmptyPolyhedronError, PreconditionError
from .linalg import dot, nullspace, primitive_integer_vector
from .polyhedra import EQ, GE, Halfspace, Polyhedron

logger = logging.getLogger(__name__)


def is_primitive(vector: Sequence[int]) -> bool:
    common = 0
    for v in vector:
        common = gcd(common, abs(int(v)))
    return common == 1


@dataclass(frozen=True)
class Segment:
    """
    Interval ``{base + t * direction : t in [t_lo, t_hi]}``.

    ``t_lo is None`` / ``t_hi is None`` stand for -inf / +inf; the closed
    flags are only meaningful for finite endpoints.
    """

    base: Point
    direction: Tuple[int, ...]
    t_lo: Optional[Fraction] = None
    t_hi: Optional[Fraction] = None
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self) -> None:
        direction = tuple(int(d) for d in self.direction)
        if len(direction) != self.base.dim:
            raise DimensionMismatchError("segment direction and base differ in dimension")
        if not is_primitive(direction):
            raise ValueError(f"direction {direction} is not a primitive integer vector")
        object.__setattr__(self, "direction", direction)
        t_lo = None if self.t_lo is None else to_fraction(self.t_lo)
        t_hi = None if self.t_hi is None else to_fraction(self.t_hi)
        if t_lo is not None and t_hi is not None and not t_lo < t_hi:
            raise ValueError(f"empty parameter interval [{t_lo}, {t_hi}]")
        object.__setattr__(self, "t_lo", t_lo)
        object.__setattr__(self, "t_hi", t_hi)
        object.__setattr__(self, "lo_closed", bool(self.lo_closed) and t_lo is not None)
        object.__setattr__(self, "hi_closed", bool(self.hi_closed) and t_hi is not None)

    @classmethod
    def create(
        cls,
        base: Sequence[object],
        direction: Sequence[object],
        t_lo: Optional[object] = None,
        t_hi: Optional[object] = None,
        lo_closed: bool = True,
        hi_closed: bool = True,
    ) -> "Segment":
        """Build a segment from a rational direction, rescaling it to be primitive."""

        primitive, factor = primitive_integer_vector(direction)
        if factor != 1:
            logger.warning("Direction %s rescaled to primitive %s", list(direction), list(primitive))
        lo = None if t_lo is None else to_fraction(t_lo) / factor
        hi = None if t_hi is None else to_fraction(t_hi) / factor
        return cls(Point.of(base), primitive, lo, hi, lo_closed, hi_closed)

    @property
    def n(self) -> int:
        return self.base.dim

    @property
    def is_bounded(self) -> bool:
        return self.t_lo is not None and self.t_hi is not None

    def point_at(self, t: object) -> Point:
        t = to_fraction(t)
        return Point(tuple(b + t * d for b, d in zip(self.base.coords, self.direction)))

    def parameter_of(self, x: Sequence[Fraction]) -> Optional[Fraction]:
        """Parameter ``t`` with ``x = base + t * direction``, or None off the line."""

        if len(x) != self.n:
            raise DimensionMismatchError(f"point in R^{len(x)} for segment in R^{self.n}")
        t: Optional[Fraction] = None
        for xi, bi, di in zip(x, self.base.coords, self.direction):
            if di != 0:
                t = (Fraction(xi) - bi) / di
                break
        if t is None:
            return None
        if any(Fraction(xi) != bi + t * di for xi, bi, di in zip(x, self.base.coords, self.direction)):
            return None
        return t

    def contains_parameter(self, t: Fraction) -> bool:
        if self.t_lo is not None and (t < self.t_lo or (t == self.t_lo and not self.lo_closed)):
            return False
        if self.t_hi is not None and (t > self.t_hi or (t == self.t_hi and not self.hi_closed)):
            return False
        return True

    def contains(self, x: Sequence[Fraction]) -> bool:
        t = self.parameter_of(x)
        return t is not None and self.contains_parameter(t)

    def to_polyhedron(self) -> Polyhedron:
        """Closure of the segment as an H-represented polyhedron."""

        w = [Fraction(d) for d in self.direction]
        constraints = [Halfspace(u, dot(u, self.base.coords), EQ) for u in nullspace([w], self.n)]
        anchor = dot(w, self.base.coords)
        norm = dot(w, w)
        if self.t_lo is not None:
            constraints.append(Halfspace(tuple(w), anchor + self.t_lo * norm, GE))
        if self.t_hi is not None:
            constraints.append(Halfspace(tuple(-a for a in w), -(anchor + self.t_hi * norm), GE))
        return Polyhedron(tuple(constraints), self.n)

    def translate(self, offset: Sequence[Fraction]) -> "Segment":
        return Segment(self.base.translate(offset), self.direction, self.t_lo, self.t_hi, self.lo_closed, self.hi_closed)

    def permute(self, perm: Sequence[int]) -> "Segment":
        return Segment(
            self.base.permute(perm),
            tuple(self.direction[p] for p in perm),
            self.t_lo,
            self.t_hi,
            self.lo_closed,
            self.hi_closed,
        )

    def interior_parameter(self) -> Fraction:
        """A parameter strictly inside the interval."""

        if self.t_lo is not None and self.t_hi is not None:
            return (self.t_lo + self.t_hi) / 2
        if self.t_lo is not None:
            return self.t_lo + 1
        if self.t_hi is not None:
            return self.t_hi - 1
        return Fraction(0)


@dataclass(frozen=True)
class Star:
    """Union of rays ``apex + t * d_l`` (``t >= 0``) with a common apex."""

    apex: Point
    directions: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        dirs = tuple(tuple(int(v) for v in d) for d in self.directions)
        if not dirs:
            raise ValueError("a star needs at least one direction")
        for d in dirs:
            if len(d) != self.apex.dim:
                raise DimensionMismatchError(f"direction {d} does not match apex dimension {self.apex.dim}")
            if not is_primitive(d):
                raise ValueError(f"star direction {d} is not primitive and nonzero")
        if len(set(dirs)) != len(dirs):
            raise ValueError("star directions must be pairwise distinct")
        object.__setattr__(self, "directions", dirs)

    @classmethod
    def create(cls, apex: Sequence[object], directions: Iterable[Sequence[object]]) -> "Star":
        prims = []
        for d in directions:
            primitive, factor = primitive_integer_vector(d)
            if factor != 1:
                logger.warning("Star direction %s rescaled to primitive %s", list(d), list(primitive))
            prims.append(primitive)
        return cls(Point.of(apex), tuple(prims))

    @property
    def n(self) -> int:
        return self.apex.dim


@dataclass(frozen=True)
class Prevariety:
    """
    Finite union of polyhedra in ``R^n``.

    For dimension <= 1 the union is also described by ``segments`` and
    isolated ``points``; membership then follows those (respecting open
    endpoints). ``branch_count`` is the number of intervals in that
    decomposition, isolated points included. ``from_polyhedra`` drops cells
    lying inside other cells before counting.
    """

    pieces: Tuple[Polyhedron, ...]
    n: int
    segments: Tuple[Segment, ...] = ()
    points: Tuple[Point, ...] = ()
    one_dimensional_view: bool = field(default=False)

    # -- construction -----------------------------------------------------------
    @classmethod
    def from_polyhedra(cls, pieces: Sequence[Polyhedron], n: Optional[int] = None) -> "Prevariety":
        pieces = tuple(pieces)
        if n is None:
            if not pieces:
                raise ValueError("dimension required for an empty prevariety")
            n = pieces[0].n
        if any(p.n != n for p in pieces):
            raise DimensionMismatchError("pieces of different ambient dimension")
        pieces = maximal_cells(pieces)
        if pieces and max(p.dim for p in pieces) <= 1:
            segments = tuple(segments_from_polyhedra([p for p in pieces if p.dim == 1]))
            points = tuple(p.interior_point for p in pieces if p.dim == 0)
            return cls(pieces, n, segments, points, True)
        return cls(pieces, n)

    @classmethod
    def from_segments(cls, segments: Sequence[Segment], points: Sequence[Point] = ()) -> "Prevariety":
        segments, points = tuple(segments), tuple(points)
        dims = {s.n for s in segments} | {p.dim for p in points}
        if len(dims) != 1:
            raise DimensionMismatchError(f"segments/points of dimensions {sorted(dims)}")
        n = dims.pop()
        pieces = tuple(s.to_polyhedron() for s in segments) + tuple(Polyhedron.from_point(p) for p in points)
        return cls(pieces, n, segments, points, True)

    @classmethod
    def from_points(cls, points: Sequence[Point]) -> "Prevariety":
        return cls.from_segments((), points)

    # -- queries ------------------------------------------------------------------
    @property
    def dim(self) -> int:
        return max((p.dim for p in self.pieces), default=-1)

    @property
    def is_empty(self) -> bool:
        return not self.pieces

    @property
    def branch_count(self) -> int:
        if self.one_dimensional_view:
            return len(self.segments) + len(self.points)
        return len(self.pieces)

    def contains(self, x: Sequence[Fraction]) -> bool:
        coords = tuple(x)
        if len(coords) != self.n:
            raise DimensionMismatchError(f"point in R^{len(coords)} for prevariety in R^{self.n}")
        if self.one_dimensional_view:
            point = Point(coords)
            return any(s.contains(coords) for s in self.segments) or any(p == point for p in self.points)
        return any(piece.contains(coords) for piece in self.pieces)

    def translate(self, offset: Sequence[object]) -> "Prevariety":
        offset = tuple(to_fraction(o) for o in offset)
        return Prevariety(
            tuple(p.translate(offset) for p in self.pieces),
            self.n,
            tuple(s.translate(offset) for s in self.segments),
            tuple(p.translate(offset) for p in self.points),
            self.one_dimensional_view,
        )

    def permute(self, perm: Sequence[int]) -> "Prevariety":
        return Prevariety(
            tuple(p.permute(perm) for p in self.pieces),
            self.n,
            tuple(s.permute(perm) for s in self.segments),
            tuple(p.permute(perm) for p in self.points),
            self.one_dimensional_view,
        )


def contains(V: Prevariety, x: Sequence[Fraction]) -> bool:
    return V.contains(x)


def maximal_cells(pieces: Sequence[Polyhedron]) -> Tuple[Polyhedron, ...]:
    """Drop cells contained in another cell; of two equal cells the first is kept."""

    kept = []
    for i, piece in enumerate(pieces):
        covered = any(
            j != i and piece.is_subset_of(other) and (j < i or not other.is_subset_of(piece))
            for j, other in enumerate(pieces)
            if other.dim >= piece.dim
        )
        if not covered:
            kept.append(piece)
    if len(kept) < len(pieces):
        logger.debug("Dropped %d cells contained in other cells", len(pieces) - len(kept))
    return tuple(kept)


def segments_from_polyhedra(pieces: Sequence[Polyhedron]) -> List[Segment]:
    """Closed segments/rays/lines for one-dimensional polyhedra."""

    segments: List[Segment] = []
    for piece in pieces:
        if piece.dim != 1:
            raise PreconditionError(f"expected a one-dimensional piece, got dimension {piece.dim}")
        w, _ = primitive_integer_vector(piece.directions[0])
        wf = [Fraction(d) for d in w]
        base = piece.interior_point
        norm = dot(wf, wf)
        anchor = dot(wf, base.coords)
        low, high = piece.extent_along(wf)
        t_lo = None if low is None else (low - anchor) / norm
        t_hi = None if high is None else (high - anchor) / norm
        segments.append(Segment(base, w, t_lo, t_hi, True, True))
    return segments


def star_to_prevariety(S: Star) -> Prevariety:
    """One closed ray ``[0, +inf)`` per direction; branch count = number of rays."""

    rays = [Segment(S.apex, d, Fraction(0), None, True, False) for d in S.directions]
    return Prevariety.from_segments(rays)


def _term_minimal_constraints(f: TropPoly, i: int) -> Optional[List[Halfspace]]:
    """Half-spaces describing ``term i attains min f``; None if infeasible."""

    a_i, c_i = f.terms[i]
    out: List[Halfspace] = []
    for l, (a_l, c_l) in enumerate(f.terms):
        if l == i or not c_l.is_finite:
            continue
        normal = tuple(Fraction(x - y) for x, y in zip(a_l.exponents, a_i.exponents))
        constant = c_i.real - c_l.real
        if all(v == 0 for v in normal):
            if constant > 0:
                return None
            continue
        out.append(Halfspace(normal, constant, GE))
    return out


def decompose_equations(eqs: Sequence[Tuple[TropPoly, TropPoly]]) -> Prevariety:
    """
    Union over minimizer choices of ``{f_i min} ∩ {g_j min} ∩ {f_i = g_j}``.

    Coefficients must be unperturbed; empty cells are discarded.
    """

    if not eqs:
        raise PreconditionError("at least one equation is required")
    n = eqs[0][0].n
    for f, g in eqs:
        if f.n != n or g.n != n:
            raise DimensionMismatchError("all polynomials must share one dimension")
        for poly in (f, g):
            if any(c.is_perturbed for _, c in poly.terms):
                raise PreconditionError("decompose_equations needs unperturbed coefficients")

    per_equation: List[List[List[Halfspace]]] = []
    for f, g in eqs:
        cells: List[List[Halfspace]] = []
        for i, (a_i, c_i) in enumerate(f.terms):
            if not c_i.is_finite:
                continue
            f_side = _term_minimal_constraints(f, i)
            if f_side is None:
                continue
            for j, (b_j, d_j) in enumerate(g.terms):
                if not d_j.is_finite:
                    continue
                g_side = _term_minimal_constraints(g, j)
                if g_side is None:
                    continue
                normal = tuple(Fraction(x - y) for x, y in zip(a_i.exponents, b_j.exponents))
                constant = d_j.real - c_i.real
                cell = f_side + g_side
                if all(v == 0 for v in normal):
                    if constant != 0:
                        continue
                else:
                    cell.append(Halfspace(normal, constant, EQ))
                cells.append(cell)
        per_equation.append(cells)

    pieces: Dict[FrozenSet[Halfspace], Polyhedron] = {}

    def _extend(index: int, acc: List[Halfspace]) -> None:
        if index == len(per_equation):
            key = frozenset(acc)
            if key not in pieces:
                pieces[key] = Polyhedron(tuple(acc), n)
            return
        for cell in per_equation[index]:
            combined = acc + cell
            if combined:
                try:
                    Polyhedron(tuple(combined), n)
                except EmptyPolyhedronError:
                    continue
            _extend(index + 1, combined)

    _extend(0, [])
    logger.debug("Decomposition produced %d nonempty cells", len(pieces))
    if not pieces:
        return Prevariety((), n)
    return Prevariety.from_polyhedra(list(pieces.values()), n)
