"""
Tropical Hilbert Functions

``TH_V(k)`` is the largest number of monomials of the grid that are
tropically independent on ``V``.

Components:
- HilbertRecord: bounds for one k, with the certificate that proves the lower
- th_polyhedron: exact value (class count) with a constructed certificate
- th_points: finite point sets, exact once co-ordered exponents fit the grid
- th_union_bounds: unions of pieces, sandwiched between the best piece and
  the sum over pieces, improved by search
- hilbert_value / hilbert_sweep: dispatch on the shape of V and sweep over k
  (thread pool, rows in k order)
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

from ..algebra.polynomials import Monomial, Point, TropPoly
from ..errors import ConstructionError, InvariantViolation, PreconditionError
from ..geometry.polyhedra import Polyhedron
from ..geometry.prevariety import Prevariety
from ..independence.certificates import Certificate, certify_from_points, co_ordered_points
from ..independence.search import search_max_independent
from .classes import count_classes
from .grids import MonomialGrid

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HilbertRecord:
    k: int
    lower: int
    upper: int
    exact: bool
    certificate: Optional[Certificate] = field(default=None, compare=False, repr=False)
    shape: str = "simplex"
    method: str = ""

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise InvariantViolation(f"lower bound {self.lower} above upper bound {self.upper} at k={self.k}")
        if self.exact and self.lower != self.upper:
            raise InvariantViolation(f"exact record with distinct bounds at k={self.k}")

    @property
    def value(self) -> int:
        return self.lower


def th_polyhedron(P: Polyhedron, grid: MonomialGrid, within: Optional[Prevariety] = None) -> HilbertRecord:
    table = count_classes(P.directions, grid)
    reps = table.representatives
    coordinates = [P.affine_coordinates(m.exponents) for m in reps]
    points = co_ordered_points(coordinates, P)
    V = within if within is not None else Prevariety.from_polyhedra([P])
    cert = certify_from_points([TropPoly.monomial(m) for m in reps], points, V)
    if cert is None or cert.size != table.count:
        raise ConstructionError(f"class representatives of a polyhedron are not independent at k={grid.k}")
    return HilbertRecord(grid.k, table.count, table.count, True, cert, grid.shape, "classes")


def co_ordered_exponents(points: Sequence[Point]) -> List[Monomial]:
    """Exponent ``j`` of point ``i``: number of distinct j-th coordinates above ``v_i[j]``."""

    n = points[0].dim
    levels = [sorted({p[j] for p in points}) for j in range(n)]
    return [Monomial(tuple(len(levels[j]) - 1 - levels[j].index(p[j]) for j in range(n))) for p in points]


def th_points(points: Sequence[Point], grid: MonomialGrid, budget: Optional[int] = None) -> HilbertRecord:
    pts = [p if isinstance(p, Point) else Point.of(p) for p in points]
    if not pts:
        raise PreconditionError("at least one point is required")
    if len(set(pts)) != len(pts):
        raise PreconditionError("points must be pairwise distinct")
    V = Prevariety.from_points(pts)
    exponents = co_ordered_exponents(pts)
    if all(grid.contains(m) for m in exponents):
        cert = certify_from_points([TropPoly.monomial(m) for m in exponents], pts, V)
        if cert is None:
            raise ConstructionError("co-ordered exponents failed to certify the point set")
        return HilbertRecord(grid.k, len(pts), len(pts), True, cert, grid.shape, "co-ordered")
    result = search_max_independent(grid.monomials(), V, budget=budget)
    return HilbertRecord(grid.k, result.size, result.upper, result.exact, result.certificate, grid.shape, "search")


def th_union_bounds(V: Prevariety, grid: MonomialGrid, budget: Optional[int] = None) -> HilbertRecord:
    if V.is_empty:
        return HilbertRecord(grid.k, 0, 0, True, None, grid.shape, "empty")
    pieces = [th_polyhedron(piece, grid, within=V) for piece in V.pieces]
    best = max(pieces, key=lambda r: r.lower)
    total = sum(r.upper for r in pieces)

    result = search_max_independent(grid.monomials(), V, budget=budget, seed=best.certificate)
    lower = max(best.lower, result.size)
    upper = min(total, result.upper)
    certificate = result.certificate if result.size >= best.lower else best.certificate
    if lower < best.lower or upper > total:
        raise InvariantViolation(f"bounds [{lower}, {upper}] outside [{best.lower}, {total}]")
    exact = lower == upper or result.exact
    logger.info("TH(k=%d) on %d pieces in [%d, %d]", grid.k, len(pieces), lower, upper)
    return HilbertRecord(grid.k, lower, upper if not exact else lower, exact, certificate, grid.shape, "union")


def hilbert_value(V: Prevariety, grid: MonomialGrid, budget: Optional[int] = None) -> HilbertRecord:
    if V.one_dimensional_view and not V.segments and V.points:
        return th_points(V.points, grid, budget)
    if len(V.pieces) == 1:
        return th_polyhedron(V.pieces[0], grid, within=V)
    return th_union_bounds(V, grid, budget)


def hilbert_sweep(
    V: Prevariety,
    shape: str,
    ks: Sequence[int],
    budget: Optional[int] = None,
    workers: int = 1,
) -> List[HilbertRecord]:
    """Records for every k; consecutive bounds are checked for monotone consistency."""

    grids = [MonomialGrid(V.n, k, shape) for k in ks]
    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        records = list(executor.map(lambda g: hilbert_value(V, g, budget), grids))
    for left, right in zip(records, records[1:]):
        if right.k > left.k and left.lower > right.upper:
            raise InvariantViolation(f"TH lower bound at k={left.k} exceeds upper bound at k={right.k}")
    return records
