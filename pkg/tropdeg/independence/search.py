"""
Maximal Independent Monomial Search

Searches for the largest set of monomials that is tropically independent on
a prevariety. Monomials whose difference is constant on ``V`` are merged
first (they can never both be strict minimizers at the same offsets), then a
depth-first search assigns witness points from a breakpoint-driven candidate
set. A partial assignment is feasible iff its difference-constraint graph
has only positive cycles, which is maintained incrementally with a
shortest-path matrix.

Features:
- Class deduplication on V (restrictions differing by a constant)
- Witness candidates: closed endpoints, pairwise breakpoints, midpoints
  refined ``candidate_depth`` times, points beyond the last breakpoint on
  unbounded sides, relative-interior points of higher-dimensional pieces
- Target-driven deepening from the best known size upward
- Node budget; on exhaustion the best certificate is returned as a lower bound

Usage:
    result = search_max_independent(grid_monomials, V)
    result.size, result.exact, result.certificate
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..algebra.polynomials import Monomial, Point, TropPoly
from ..errors import InvariantViolation
from ..geometry.linalg import dot
from ..geometry.prevariety import Prevariety, Segment
from ..settings import get_settings
from .certificates import Certificate, certify_from_points, verify_certificate

logger = logging.getLogger(__name__)

Node = Tuple[int, int]


class _BudgetExhausted(Exception):
    pass


@dataclass(frozen=True)
class SearchResult:
    """
    Outcome of a search.

    ``upper`` is the structural bound (classes on V, sum of per-piece class
    counts); ``exact`` is set when ``size == upper`` or the finite candidate
    analysis was exhaustive for a finite point set.
    """

    size: int
    certificate: Optional[Certificate]
    exact: bool
    lower_bound_only: bool
    upper: int
    nodes: int
    classes: int


def class_key(monomial: Monomial, V: Prevariety) -> Tuple:
    """Key shared exactly by monomials whose restrictions to V differ by a constant."""

    a = [Fraction(e) for e in monomial.exponents]
    anchor = V.pieces[0].interior_point.coords
    return tuple(
        (piece.affine_coordinates(a), dot(a, piece.interior_point.coords) - dot(a, anchor)) for piece in V.pieces
    )


def class_representatives(monomials: Sequence[Monomial], V: Prevariety) -> List[Monomial]:
    """First monomial of every class on V, in input order."""

    seen: Dict[Tuple, Monomial] = {}
    for m in monomials:
        seen.setdefault(class_key(m, V), m)
    return list(seen.values())


def piece_class_count(monomials: Sequence[Monomial], V: Prevariety) -> int:
    """Sum over pieces of the number of classes on that piece alone."""

    total = 0
    for piece in V.pieces:
        total += len({piece.affine_coordinates([Fraction(e) for e in m.exponents]) for m in monomials})
    return total


def _segment_parameters(seg: Segment, reps: Sequence[Monomial], depth: int) -> List[Fraction]:
    w = [Fraction(d) for d in seg.direction]
    lines = {(dot([Fraction(e) for e in m.exponents], w), m.pair(seg.base.coords)) for m in reps}
    lines = sorted(lines)
    params = set()
    if seg.t_lo is not None and seg.lo_closed:
        params.add(seg.t_lo)
    if seg.t_hi is not None and seg.hi_closed:
        params.add(seg.t_hi)
    for i, (s1, c1) in enumerate(lines):
        for s2, c2 in lines[i + 1:]:
            if s1 != s2:
                t = (c2 - c1) / (s1 - s2)
                if seg.contains_parameter(t):
                    params.add(t)
    ordered = sorted(params) or [seg.interior_parameter()]
    if seg.t_lo is None:
        ordered.insert(0, ordered[0] - 1)
    elif not seg.lo_closed and ordered[0] > seg.t_lo:
        ordered.insert(0, (seg.t_lo + ordered[0]) / 2)
    if seg.t_hi is None:
        ordered.append(ordered[-1] + 1)
    elif not seg.hi_closed and ordered[-1] < seg.t_hi:
        ordered.append((ordered[-1] + seg.t_hi) / 2)
    for _ in range(depth):
        refined = [ordered[0]]
        for left, right in zip(ordered, ordered[1:]):
            refined.extend([(left + right) / 2, right])
        ordered = refined
    return [t for t in ordered if seg.contains_parameter(t)]


def witness_candidates(
    reps: Sequence[Monomial],
    V: Prevariety,
    depth: int,
    extra: Sequence[Point] = (),
) -> List[Point]:
    points: List[Point] = []
    if V.one_dimensional_view:
        for seg in V.segments:
            points.extend(seg.point_at(t) for t in _segment_parameters(seg, reps, depth))
        points.extend(V.points)
    else:
        points.extend(piece.interior_point for piece in V.pieces)
    points.extend(p for p in extra if V.contains(p.coords))
    return list(dict.fromkeys(points))


class _IndependenceSearch:
    """Depth-first assignment of witness points with positive-cycle pruning."""

    def __init__(self, reps: Sequence[Monomial], points: Sequence[Point], budget: int):
        self.reps = list(reps)
        self.points = list(points)
        self.budget = budget
        self.nodes = 0
        self.values = [[m.pair(p.coords) for p in self.points] for m in self.reps]

    def weight(self, u: Node, v: Node) -> Fraction:
        # constraint b_v - b_u < f_u(point_v) - f_v(point_v)
        return self.values[u[0]][v[1]] - self.values[v[0]][v[1]]

    def extend(self, chosen: List[Node], dist: List[List[Fraction]], new: Node) -> Optional[List[List[Fraction]]]:
        r = len(chosen)
        if r == 0:
            return [[Fraction(0)]]
        to_new = [self.weight(x, new) for x in chosen]
        from_new = [self.weight(new, x) for x in chosen]
        reach_from = [min(from_new[x] + dist[x][y] for x in range(r)) for y in range(r)]
        reach_to = [min(dist[x][y] + to_new[y] for y in range(r)) for x in range(r)]
        if min(reach_from[y] + to_new[y] for y in range(r)) <= 0:
            return None
        grown = [[min(dist[x][y], reach_to[x] + reach_from[y]) for y in range(r)] + [reach_to[x]] for x in range(r)]
        grown.append(reach_from + [Fraction(0)])
        return grown

    def find(self, target: int) -> Optional[List[Node]]:
        return self._dfs(target, 0, [], [])

    def _dfs(self, target: int, start: int, chosen: List[Node], dist: List[List[Fraction]]) -> Optional[List[Node]]:
        if len(chosen) == target:
            return list(chosen)
        for idx in range(start, len(self.reps)):
            if len(chosen) + len(self.reps) - idx < target:
                break
            for p in range(len(self.points)):
                self.nodes += 1
                if self.nodes > self.budget:
                    raise _BudgetExhausted
                grown = self.extend(chosen, dist, (idx, p))
                if grown is None:
                    continue
                found = self._dfs(target, idx + 1, chosen + [(idx, p)], grown)
                if found is not None:
                    return found
        return None


def search_max_independent(
    monomials: Sequence[Monomial],
    V: Prevariety,
    budget: Optional[int] = None,
    candidate_depth: Optional[int] = None,
    seed: Optional[Certificate] = None,
) -> SearchResult:
    settings = get_settings()
    budget = budget if budget is not None else settings.budgets.search_nodes
    depth = candidate_depth if candidate_depth is not None else settings.budgets.candidate_depth
    if V.is_empty or not monomials:
        return SearchResult(0, None, True, False, 0, 0, 0)

    reps = class_representatives(monomials, V)
    upper = min(len(reps), piece_class_count(reps, V))
    extra = [p for p, _ in seed.witnesses] if seed is not None else []
    points = witness_candidates(reps, V, depth, extra)
    logger.debug("Search over %d classes and %d candidate points", len(reps), len(points))

    best: Optional[Certificate] = None
    if seed is not None and verify_certificate(seed, V):
        best = seed
    else:
        best = certify_from_points([TropPoly.monomial(reps[0])], [points[0]], V)
    lower = best.size if best is not None else 0

    engine = _IndependenceSearch(reps, points, budget)
    completed = lower >= upper
    exhausted = False
    try:
        target = lower + 1
        while target <= upper:
            nodes = engine.find(target)
            if nodes is None:
                completed = True
                break
            cert = certify_from_points(
                [TropPoly.monomial(reps[i]) for i, _ in nodes],
                [points[p] for _, p in nodes],
                V,
            )
            if cert is None:
                raise InvariantViolation(f"feasible witness assignment of size {target} is singular")
            best, lower = cert, target
            target += 1
        else:
            completed = True
    except _BudgetExhausted:
        exhausted = True
        logger.warning("Search budget of %d nodes exhausted at size %d (upper %d)", budget, lower, upper)

    finite_points = V.one_dimensional_view and not V.segments
    exact = lower == upper or (completed and not exhausted and finite_points)
    return SearchResult(lower, best, exact, exhausted, upper, engine.nodes, len(reps))
