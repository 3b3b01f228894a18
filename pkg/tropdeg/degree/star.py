"""
Star Prevarieties: Leading Coefficient and the Lattice-Point Recursion

For a star with apex ``0`` and primitive directions ``(p_l, q_l)`` the box
Hilbert function grows like ``k * B`` with
``B = sum_i max(sum_{p_li > 0} p_li, -sum_{p_li < 0} p_li)``.

Lower bound construction (planar): after translating the apex to the origin
and reflecting every axis whose positive direction sum exceeds its negative
sum, take the directions ``(u_l, v_l)`` with a negative entry and grow the
polygon ``{u_l x + v_l y >= c_l} ∩ [0, k]^2`` one line at a time. Each step
picks a dynamic edge with an inner lattice point, records the point and
decrements that line's threshold. The recorded points ``w_1, w_2, ...`` give
the independent monomials of ``min_s (<w_s, x> + 2^s)``.

Components:
- star_B, star_constant, star_defect (B, C and D of the recursion)
- star_lower_construct: recursion, certificate, un-reflection
- star_upper_check: search value against ``k B + 1`` on the box grid
- star_sweep: per-k rows and the observed slope of |W|
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, isqrt
from typing import List, Optional, Sequence, Tuple

from ..algebra.polynomials import Monomial, Point, TropPoly, lower_envelope, restrict_to_segment
from ..algebra.scalars import PerturbedScalar
from ..errors import ConstructionError, InvariantViolation, PreconditionError
from ..geometry.prevariety import Segment, Star, star_to_prevariety
from ..hilbert.grids import BOX, MonomialGrid
from ..independence.certificates import Certificate, verify_certificate
from ..independence.search import search_max_independent

logger = logging.getLogger(__name__)

LatticePoint = Tuple[int, int]


@dataclass(frozen=True)
class StarConstruction:
    k: int
    B: int
    C: int
    D: int
    negative: Tuple[Tuple[int, int], ...]
    base_thresholds: Tuple[int, ...]
    thresholds: Tuple[int, ...]
    W: Tuple[LatticePoint, ...]
    steps: Tuple[Tuple[int, int, int], ...] = field(repr=False)
    reflected: Tuple[bool, bool] = (False, False)

    @property
    def lower_target(self) -> int:
        return self.k * self.B - self.D


@dataclass(frozen=True)
class StarUpperReport:
    k: int
    B: int
    search_value: int
    class_upper: int
    bound: int
    exact: bool
    exhausted: bool


@dataclass(frozen=True)
class StarSweepRow:
    k: int
    B: int
    C: int
    D: int
    W: int
    lower_target: int
    upper: int
    verified: bool
    search_value: Optional[int] = None


@dataclass(frozen=True)
class StarSweep:
    rows: Tuple[StarSweepRow, ...]
    slope_realized: bool


def star_B(S: Star) -> int:
    total = 0
    for i in range(S.n):
        positive = sum(d[i] for d in S.directions if d[i] > 0)
        negative = -sum(d[i] for d in S.directions if d[i] < 0)
        total += max(positive, negative)
    return total


def _ceil_sqrt(value: int) -> int:
    root = isqrt(value)
    return root if root * root == value else root + 1


def _normalized(S: Star) -> Tuple[Tuple[Tuple[int, int], ...], Tuple[bool, bool]]:
    """Directions after reflecting axes whose positive sum dominates."""

    if S.n != 2:
        raise PreconditionError(f"the star recursion is planar, got a star in R^{S.n}")
    reflect = []
    for i in range(2):
        positive = sum(d[i] for d in S.directions if d[i] > 0)
        negative = -sum(d[i] for d in S.directions if d[i] < 0)
        reflect.append(positive > negative)
    directions = tuple(
        (-d[0] if reflect[0] else d[0], -d[1] if reflect[1] else d[1]) for d in S.directions
    )
    return directions, (reflect[0], reflect[1])


def _negative_lines(directions: Sequence[Tuple[int, int]]) -> Tuple[Tuple[int, int], ...]:
    return tuple(d for d in directions if d[0] < 0 or d[1] < 0)


def star_constant(S: Star) -> int:
    """``C = sum_l ceil(sqrt(u_l^2 + v_l^2))`` over the negative directions."""

    directions, _ = _normalized(S)
    return sum(_ceil_sqrt(u * u + v * v) for u, v in _negative_lines(directions))


def star_defect(negative: Sequence[Tuple[int, int]], C: int) -> int:
    total = 0
    for u, v in negative:
        if u >= 0 and v < 0:
            total += u - v
        elif u < 0 and v < 0:
            total -= 2 * (u + v)
        elif u < 0 and v >= 0:
            total += v - u
    return C * total


def _extended_gcd(a: int, b: int) -> Tuple[int, int, int]:
    if b == 0:
        return (a, 1, 0) if a >= 0 else (-a, -1, 0)
    g, x, y = _extended_gcd(b, a % b)
    return g, y, x - (a // b) * y


def _inner_lattice_point(
    line: int,
    lines: Sequence[Tuple[int, int]],
    thresholds: Sequence[int],
    k: int,
) -> Optional[LatticePoint]:
    """Lexicographically smallest inner lattice point of the edge on ``line``, if any."""

    u, v = lines[line]
    c = thresholds[line]
    g, a, b = _extended_gcd(u, v)
    if c % g:
        return None
    x0, y0 = a * (c // g), b * (c // g)
    # p(tau) = (x0 - v tau, y0 + u tau); every other constraint is alpha + beta tau >= 0
    constraints: List[Tuple[int, int]] = [(x0, -v), (k - x0, v), (y0, u), (k - y0, -u)]
    for index, (u2, v2) in enumerate(lines):
        if index != line:
            constraints.append((u2 * x0 + v2 * y0 - thresholds[index], -u2 * v + v2 * u))
    lo: Optional[Fraction] = None
    hi: Optional[Fraction] = None
    for alpha, beta in constraints:
        if beta == 0:
            if alpha < 0:
                return None
            continue
        bound = Fraction(-alpha, beta)
        if beta > 0:
            lo = bound if lo is None else max(lo, bound)
        else:
            hi = bound if hi is None else min(hi, bound)
    if lo is None or hi is None or not lo < hi:
        return None
    first, last = floor(lo) + 1, ceil(hi) - 1
    if first > last:
        return None
    candidates = [(x0 - v * tau, y0 + u * tau) for tau in (first, last)]
    return min(candidates)


def _recursion(negative: Sequence[Tuple[int, int]], C: int, k: int):
    thresholds = [C * min(u, v) for u, v in negative]
    base = tuple(thresholds)
    W: List[LatticePoint] = []
    steps: List[Tuple[int, int, int]] = []
    while True:
        for line in range(len(negative)):
            point = _inner_lattice_point(line, negative, thresholds, k)
            if point is not None:
                break
        else:
            break
        W.append(point)
        steps.append((len(W), line, thresholds[line]))
        logger.debug("Step %d: line %d at c=%d adds %s", len(W), line, thresholds[line], point)
        thresholds[line] -= 1
    return base, tuple(thresholds), W, steps


def _ray_witnesses(
    members: Sequence[TropPoly],
    rays: Sequence[Segment],
    steps: Sequence[Tuple[int, int, int]],
) -> List[Tuple[Point, int]]:
    """Witness of member ``s`` from the envelope of g on its active ray."""

    g = TropPoly(tuple(term for member in members for term in member.terms))
    envelopes = {}
    witnesses = []
    for step, line, _ in steps:
        if line not in envelopes:
            envelopes[line] = lower_envelope(restrict_to_segment(g, rays[line]))
        piece = envelopes[line].piece_of(step - 1)
        if piece is None or not piece.unique:
            raise ConstructionError(f"member {step} is not a unique minimizer on its active ray")
        start = piece.start.real if piece.start is not None else None
        end = piece.end.real if piece.end is not None else None
        if start is None:
            raise ConstructionError("active ray envelope does not start at the apex")
        z = start + 1 if end is None else (start + end) / 2
        witnesses.append((rays[line].point_at(z), step - 1))
    return witnesses


def star_lower_construct(S: Star, k: int) -> Tuple[StarConstruction, Certificate]:
    directions, reflected = _normalized(S)
    negative = _negative_lines(directions)
    C = star_constant(S)
    if k <= C:
        raise PreconditionError(f"k below construction threshold: k={k} <= C={C}")
    B = star_B(S)
    D = star_defect(negative, C)

    base, thresholds, W, steps = _recursion(negative, C, k)
    if len(set(W)) != len(W):
        raise InvariantViolation("recursion produced a repeated lattice point")
    for (u, v), c in zip(negative, thresholds):
        if any(not u * x + v * y > c for x, y in W):
            raise InvariantViolation(f"lattice point on or outside line {u}x + {v}y = {c}")
    if len(W) < k * B - D:
        raise InvariantViolation(f"|W| = {len(W)} below kB - D = {k * B - D}")

    working = Star(Point.of([0, 0]), directions)
    V_work = star_to_prevariety(working)
    rays = [Segment(working.apex, d, Fraction(0), None, True, False) for d in negative]
    members = [TropPoly.monomial(w, 2 ** s) for s, w in enumerate(W, start=1)]
    witnesses = _ray_witnesses(members, rays, steps) if W else []
    work_cert = Certificate(tuple((m, PerturbedScalar.of(0)) for m in members), tuple(witnesses), V_work)
    check = verify_certificate(work_cert, V_work)
    if not check:
        raise ConstructionError(f"star certificate failed: {check.diagnostic}")

    cert = _restore(work_cert, W, reflected, k, S)
    check = verify_certificate(cert, star_to_prevariety(S))
    if not check:
        raise ConstructionError(f"restored star certificate failed: {check.diagnostic}")
    logger.info("Star recursion k=%d: |W|=%d, kB-D=%d (B=%d, C=%d, D=%d)", k, len(W), k * B - D, B, C, D)
    construction = StarConstruction(k, B, C, D, negative, base, thresholds, tuple(W), tuple(steps), reflected)
    return construction, cert


def _restore(
    cert: Certificate,
    W: Sequence[LatticePoint],
    reflected: Tuple[bool, bool],
    k: int,
    S: Star,
) -> Certificate:
    """Undo the axis reflections (exponent i -> k - i) and the apex translation."""

    apex = S.apex.coords
    members = []
    for s, w in enumerate(W, start=1):
        exps = tuple(k - w[i] if reflected[i] else w[i] for i in range(2))
        offset = Fraction(2 ** s) - sum((Fraction(e) * a for e, a in zip(exps, apex)), Fraction(0))
        members.append((TropPoly.monomial(Monomial(exps)), PerturbedScalar.of(offset)))
    witnesses = []
    for point, j in cert.witnesses:
        coords = tuple(-x if reflected[i] else x for i, x in enumerate(point.coords))
        witnesses.append((Point(coords).translate(apex), j))
    return Certificate(tuple(members), tuple(witnesses), star_to_prevariety(S))


def star_upper_check(S: Star, k: int, budget: Optional[int] = None) -> StarUpperReport:
    B = star_B(S)
    V = star_to_prevariety(S)
    result = search_max_independent(MonomialGrid(S.n, k, BOX).monomials(), V, budget=budget)
    bound = k * B + 1
    if result.size > bound:
        raise InvariantViolation(f"search found {result.size} independent monomials above kB+1 = {bound}")
    return StarUpperReport(k, B, result.size, result.upper, bound, result.exact, result.lower_bound_only)


def _sweep_row(S: Star, k: int, search_k_max: Optional[int], budget: Optional[int]) -> StarSweepRow:
    construction, _ = star_lower_construct(S, k)
    search_value = None
    if search_k_max is not None and k <= search_k_max:
        search_value = star_upper_check(S, k, budget).search_value
    return StarSweepRow(
        k,
        construction.B,
        construction.C,
        construction.D,
        len(construction.W),
        construction.lower_target,
        k * construction.B + 1,
        True,
        search_value,
    )


def star_sweep(
    S: Star,
    ks: Sequence[int],
    search_k_max: Optional[int] = None,
    budget: Optional[int] = None,
    workers: int = 1,
) -> StarSweep:
    """Rows in k order; ``slope_realized`` when |W| grows by B from k = C + 5 on."""

    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        rows = tuple(executor.map(lambda k: _sweep_row(S, k, search_k_max, budget), ks))
    C = star_constant(S)
    tail = [(a, b) for a, b in zip(rows, rows[1:]) if b.k == a.k + 1 and a.k >= C + 5]
    slope_realized = bool(tail) and all(b.W - a.W == b.B for a, b in tail)
    return StarSweep(rows, slope_realized)
