"""
Tropical degree bounds for one-dimensional prevarieties.

Lower bound: ``TH_V(k r) >= (TH_V(k) - c) r`` with ``c`` the branch count,
hence ``degT(V) >= (TH_V(k) - c) / k`` for every observed k.
Upper bound: ``TH_V(k)`` is at most the sum of per-branch class counts, so
the sum of the per-branch eventual slopes bounds the degree; stars on the box
grid are additionally bounded by their leading coefficient ``B``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from ..errors import InvariantViolation, PreconditionError
from ..geometry.prevariety import Prevariety, Star
from ..hilbert.classes import class_counts
from ..hilbert.fitting import eventual_poly_fit
from ..hilbert.functions import hilbert_sweep
from ..hilbert.grids import BOX, SIMPLEX
from .star import star_B, star_constant, star_lower_construct

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DegreeBounds:
    lower: Fraction
    upper: Fraction
    evidence: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise InvariantViolation(f"degree lower bound {self.lower} exceeds upper bound {self.upper}")


def subadditive_lower(values: Sequence[Tuple[int, int]], c: int) -> Fraction:
    """``max_k (a_k - c) / k`` over observations with ``k >= 1``."""

    if not values:
        raise PreconditionError("no observations")
    if c < 0:
        raise PreconditionError("c must be nonnegative")
    ordered = sorted(values)
    for (k1, a1), (k2, a2) in zip(ordered, ordered[1:]):
        if a2 < a1:
            raise PreconditionError(f"values decrease between k={k1} and k={k2}")
    candidates = [Fraction(a - c, k) for k, a in ordered if k >= 1]
    if not candidates:
        raise PreconditionError("no observation with k >= 1")
    return max(candidates)


def branch_slope(direction: Sequence[int], shape: str, kmax: int) -> Fraction:
    """Eventual increment of the class count on one branch, fitted over k <= kmax."""

    ks = list(range(max(0, kmax - 4), kmax + 1))
    fit = eventual_poly_fit(class_counts([direction], len(direction), shape, ks), 1)
    return fit.leading


def degree_bounds(
    V: Prevariety,
    shape: str = SIMPLEX,
    kmax: int = 6,
    budget: Optional[int] = None,
    workers: int = 1,
    star: Optional[Star] = None,
) -> DegreeBounds:
    if V.is_empty:
        raise PreconditionError("the prevariety is empty")
    if V.dim > 1:
        raise PreconditionError(f"degree bounds need dim V <= 1, got {V.dim}")
    if kmax < 2:
        raise PreconditionError("kmax must be at least 2")
    c = V.branch_count
    if V.dim == 0:
        return DegreeBounds(Fraction(0), Fraction(0), (f"finite set of {c} points: TH is bounded",))

    records = hilbert_sweep(V, shape, list(range(1, kmax + 1)), budget=budget, workers=workers)
    running, observed = 0, []
    for record in records:
        running = max(running, record.lower)
        observed.append((record.k, running))
    lower = max(Fraction(0), subadditive_lower(observed, c))
    best_k = max(observed, key=lambda kv: Fraction(kv[1] - c, kv[0]))[0]
    evidence = [f"lower: (TH({best_k}) - {c}) / {best_k} from the {shape} sweep up to k={kmax}"]

    slopes = [branch_slope(seg.direction, shape, kmax) for seg in V.segments]
    upper = sum(slopes, Fraction(0))
    evidence.append("upper: branch class-count slopes " + ", ".join(str(s) for s in slopes))

    if star is not None and shape == BOX and star.n == 2:
        B = Fraction(star_B(star))
        if B < upper:
            upper = B
            evidence.append(f"upper: star leading coefficient B={B}")
        if kmax > star_constant(star):
            construction, _ = star_lower_construct(star, kmax)
            star_lower = Fraction(len(construction.W) - c, construction.k)
            if star_lower > lower:
                lower = star_lower
                evidence.append(f"lower: (|W| - {c}) / {construction.k} from the star recursion")
    logger.info("Degree bounds [%s, %s]", lower, upper)
    return DegreeBounds(lower, upper, tuple(evidence))
