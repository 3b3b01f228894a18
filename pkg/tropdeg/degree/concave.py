"""
Slopes of univariate min-plus polynomials with halving coefficients.

For ``h(z) = min_i (i * z + a_i)`` on ``z >= 0`` with positive ``a_0..a_t``,
``a_{i-1} >= 2 a_i`` and positive (possibly infinite) ``a_j`` beyond ``t``,
every slope ``0..t`` occurs: terms ``i-1`` and ``i`` are the only minimizers
at ``z_i = a_{i-1} - a_i``, and beyond ``z0`` no slope above ``t`` matters.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

from ..algebra.polynomials import UnivariateRestriction, lower_envelope
from ..algebra.scalars import PerturbedScalar
from ..errors import PreconditionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConcaveSlopes:
    t: int
    attained: Tuple[int, ...]
    breakpoints: Tuple[PerturbedScalar, ...]
    threshold: PerturbedScalar
    verified: bool
    failing_index: Optional[int] = None


def _coefficients(h: Union[UnivariateRestriction, Sequence[object]]) -> Tuple[PerturbedScalar, ...]:
    if isinstance(h, UnivariateRestriction):
        by_slope = {}
        for piece in h.pieces:
            if piece.slope.denominator != 1 or piece.slope < 0:
                raise PreconditionError(f"slope {piece.slope} is not a nonnegative integer")
            slope = int(piece.slope)
            if slope in by_slope:
                raise PreconditionError(f"slope {slope} appears twice")
            by_slope[slope] = piece.offset
        return tuple(by_slope.get(i, PerturbedScalar.infinity()) for i in range(max(by_slope) + 1))
    return tuple(PerturbedScalar.of(a) for a in h)


def concave_slopes(h: Union[UnivariateRestriction, Sequence[object]]) -> ConcaveSlopes:
    a = _coefficients(h)
    if not a:
        raise PreconditionError("at least one coefficient is required")
    for j, value in enumerate(a):
        if value.is_finite and not value > 0:
            logger.info("Coefficient a_%d = %s is not positive", j, value)
            return ConcaveSlopes(0, (), (), PerturbedScalar.of(0), False, j)
    if not a[0].is_finite:
        return ConcaveSlopes(0, (), (), PerturbedScalar.of(0), False, 0)

    t = 0
    while t + 1 < len(a) and a[t + 1].is_finite and a[t] >= a[t + 1].scale(2):
        t += 1
    breakpoints = tuple(a[i - 1] - a[i] for i in range(1, t + 1))
    threshold = PerturbedScalar.of(0)
    for j in range(t + 1, len(a)):
        if a[j].is_finite:
            threshold = max(threshold, (a[t] - a[j]) / (j - t))

    restriction = UnivariateRestriction.from_coefficients(a, Fraction(0))
    verified = True
    for i, z in enumerate(breakpoints, start=1):
        _, argmin = restriction.evaluate(z)
        if argmin != frozenset({i - 1, i}):
            verified = False
            logger.info("Breakpoint z_%d = %s has minimizers %s", i, z, sorted(argmin))
    envelope = lower_envelope(restriction)
    attained = tuple(sorted(term for term in envelope.attained_terms if term <= t))
    if attained != tuple(range(t + 1)):
        verified = False
    return ConcaveSlopes(t, attained, breakpoints, threshold, verified)
