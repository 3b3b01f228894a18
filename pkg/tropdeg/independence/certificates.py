"""
Certificates of Tropical Independence

A certificate for polynomials ``f_1..f_s`` on a prevariety ``V`` is a list of
offsets ``b_j`` together with witness points ``v_j`` in ``V`` such that
``b_j + f_j(v_j) < b_i + f_i(v_j)`` for every ``i != j``: at its witness each
member is the strict unique minimizer of ``min_j (b_j + f_j)``.

Components:
- Certificate / VerificationResult value types
- verify_certificate: exact check, never raises, names the first failure
- certify_from_points: matching + dual potentials on chosen witness points
- co_ordered_points: points of a polyhedron whose per-coordinate order is the
  reverse of given exponent vectors (diagonal Gram matchings)
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from ..algebra.polynomials import Point, TropPoly, eval_poly
from ..algebra.scalars import PerturbedScalar, to_fraction
from ..errors import (
    ConstructionError,
    DimensionMismatchError,
    InvariantViolation,
    PreconditionError,
    TropdegError,
)
from ..geometry.linalg import rank, solve_square
from ..geometry.polyhedra import Polyhedron
from ..geometry.prevariety import Prevariety
from ..settings import get_settings
from .matching import build_eval_matrix, min_matching, tropical_rank
from .potentials import dual_potentials

logger = logging.getLogger(__name__)

Member = Tuple[TropPoly, PerturbedScalar]
Witness = Tuple[Point, int]


@dataclass(frozen=True)
class Certificate:
    """Members ``(f_j, b_j)`` and witnesses ``(v, j)``; member ``j`` is minimal at ``v``."""

    members: Tuple[Member, ...]
    witnesses: Tuple[Witness, ...]
    prevariety: Optional[Prevariety] = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        members = tuple((f, PerturbedScalar.of(b)) for f, b in self.members)
        witnesses = tuple((p if isinstance(p, Point) else Point.of(p), int(j)) for p, j in self.witnesses)
        if len(members) != len(witnesses):
            raise ValueError(f"{len(members)} members but {len(witnesses)} witnesses")
        if sorted(j for _, j in witnesses) != list(range(len(members))):
            raise ValueError("every member needs exactly one witness")
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "witnesses", witnesses)

    @property
    def size(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def member_value(self, j: int, x: Sequence[Fraction]) -> PerturbedScalar:
        f, b = self.members[j]
        return b + eval_poly(f, x)[0]

    def witness_of(self, j: int) -> Point:
        for point, index in self.witnesses:
            if index == j:
                return point
        raise KeyError(j)

    def polynomial(self) -> TropPoly:
        """``min_j (b_j + f_j)`` as one polynomial (equal exponents merge)."""

        return TropPoly(tuple((m, c + b) for f, b in self.members for m, c in f.terms))

    def translate(self, t: Sequence[object]) -> "Certificate":
        """Certificate on ``V - t``: members ``x -> f_j(x + t)``, witnesses ``v - t``."""

        t = tuple(to_fraction(x) for x in t)
        minus = tuple(-x for x in t)
        return Certificate(
            tuple((f.translated(t), b) for f, b in self.members),
            tuple((p.translate(minus), j) for p, j in self.witnesses),
            self.prevariety.translate(minus) if self.prevariety is not None else None,
        )

    def permute(self, perm: Sequence[int]) -> "Certificate":
        return Certificate(
            tuple((f.permute(perm), b) for f, b in self.members),
            tuple((p.permute(perm), j) for p, j in self.witnesses),
            self.prevariety.permute(perm) if self.prevariety is not None else None,
        )


@dataclass(frozen=True)
class VerificationResult:
    ok: bool
    diagnostic: str = ""

    def __bool__(self) -> bool:
        return self.ok


def verify_certificate(cert: Certificate, V: Optional[Prevariety] = None) -> VerificationResult:
    """Exact strict-minimality check; diagnostics use 1-based numbering."""

    ambient = V if V is not None else cert.prevariety
    try:
        for position, (point, j) in enumerate(cert.witnesses, start=1):
            if ambient is not None and not ambient.contains(point.coords):
                return VerificationResult(False, f"witness {position} not in prevariety")
            own = cert.member_value(j, point.coords)
            for i in range(cert.size):
                if i == j:
                    continue
                other = cert.member_value(i, point.coords)
                if other == own:
                    return VerificationResult(
                        False, f"tie at witness {position}: members {j + 1} and {i + 1} both equal {own}"
                    )
                if other < own:
                    return VerificationResult(
                        False,
                        f"violation at witness {position}: member {i + 1} ({other}) "
                        f"below member {j + 1} ({own})",
                    )
    except (TropdegError, ValueError, ArithmeticError) as exc:
        return VerificationResult(False, f"verification failed: {exc}")
    return VerificationResult(True, "verified")


def certify_from_points(
    fs: Sequence[TropPoly],
    vs: Sequence[Sequence[object]],
    V: Optional[Prevariety] = None,
) -> Optional[Certificate]:
    """
    Certificate with the given witnesses, or None if the evaluation matrix
    is tropically singular.
    """

    if len(fs) != len(vs):
        raise PreconditionError(f"{len(fs)} polynomials but {len(vs)} points")
    if not fs:
        raise PreconditionError("at least one polynomial is required")
    points = [p if isinstance(p, Point) else Point.of(p) for p in vs]
    for k, p in enumerate(points, start=1):
        if p.dim != fs[0].n:
            raise DimensionMismatchError(f"point {k} in R^{p.dim} for polynomials in {fs[0].n} variables")
        if V is not None and not V.contains(p.coords):
            raise PreconditionError(f"point {k} {tuple(str(c) for c in p.coords)} is not in the prevariety")

    A = build_eval_matrix(fs, [p.coords for p in points])
    result = min_matching(A)
    if not result.unique:
        logger.debug("Evaluation matrix is tropically singular (gap %s)", result.gap)
        return None
    # member i is matched with point permutation[i]
    ordered = [points[result.permutation[i]] for i in range(len(fs))]
    normalized = A.permute_columns(result.permutation)
    offsets = dual_potentials(normalized)
    cert = Certificate(
        tuple(zip(fs, offsets)),
        tuple((p, i) for i, p in enumerate(ordered)),
        V,
    )
    check = verify_certificate(cert, V)
    if not check:
        raise InvariantViolation(f"constructed certificate failed verification: {check.diagnostic}")
    if cert.size <= get_settings().budgets.rank_bruteforce and tropical_rank(normalized) != cert.size:
        raise InvariantViolation("verified certificate without full tropical rank")
    return cert


def co_ordered_points(
    bs: Sequence[Sequence[object]],
    P: Polyhedron,
    coordinates: Optional[Sequence[int]] = None,
) -> List[Point]:
    """
    Points ``v_i`` in the relative interior of ``P`` whose chosen coordinates
    are co-ordered with ``bs``: ``b_i[k] <= b_l[k]`` iff ``v_i[J_k] >= v_l[J_k]``.
    Boundary points are never returned, so the points also lie in every
    half-open version of ``P``.
    """

    m = P.dim
    vectors = [tuple(to_fraction(x) for x in b) for b in bs]
    for b in vectors:
        if len(b) != m:
            raise DimensionMismatchError(f"vector of length {len(b)} for a {m}-dimensional polyhedron")
    if len(set(vectors)) != len(vectors):
        raise PreconditionError("vectors must be pairwise distinct")
    if not vectors:
        return []
    x0 = P.interior_point
    if m == 0:
        return [x0]

    chosen = tuple(coordinates) if coordinates is not None else P.pivot_coordinates
    if len(chosen) != m:
        raise PreconditionError(f"{len(chosen)} coordinates chosen for dimension {m}")
    projection = [[row[c] for c in chosen] for row in P.directions]
    if rank(projection) != m:
        raise PreconditionError(f"direction space does not project onto coordinates {chosen}")
    transposed = [[projection[k][i] for k in range(m)] for i in range(m)]

    ranks: List[List[int]] = []
    for k in range(m):
        levels = sorted({b[k] for b in vectors})
        ranks.append([levels.index(b[k]) for b in vectors])

    delta = Fraction(1)
    for _ in range(get_settings().budgets.co_ordered_halvings):
        points = []
        for i in range(len(vectors)):
            target = [-delta * ranks[k][i] for k in range(m)]
            lam = solve_square(transposed, target)
            coords = list(x0.coords)
            for coeff, row in zip(lam, P.directions):
                coords = [c + coeff * d for c, d in zip(coords, row)]
            points.append(Point(tuple(coords)))
        if all(P.in_relative_interior(p.coords) for p in points):
            logger.debug("Co-ordered points found with delta %s", delta)
            return points
        delta /= 2
    raise ConstructionError(f"no co-ordered points within {get_settings().budgets.co_ordered_halvings} halvings")
