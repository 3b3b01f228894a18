"""
Brute-force reference implementations for cross-checking.

Everything here enumerates permutations and subsets directly over
``PerturbedScalar`` values, without the integer encoding or the assignment
solver used on the main path, so disagreements point at real bugs.
"""

from __future__ import annotations

import itertools
import logging
import random
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from ..algebra.polynomials import Monomial, Point, TropPoly
from ..algebra.scalars import PerturbedScalar
from ..errors import BudgetExceededError
from .matching import EvalMatrix, build_eval_matrix

logger = logging.getLogger(__name__)


def brute_matching(A: EvalMatrix) -> Tuple[Optional[PerturbedScalar], int]:
    """Minimum matching value and the number of permutations attaining it."""

    size = A.shape[0]
    best: Optional[PerturbedScalar] = None
    count = 0
    for perm in itertools.permutations(range(size)):
        value = A.matching_value(perm)
        if not value.is_finite:
            continue
        if best is None or value < best:
            best, count = value, 1
        elif value == best:
            count += 1
    return best, count


def brute_nonsingular(A: EvalMatrix) -> bool:
    best, count = brute_matching(A)
    return best is not None and count == 1


def brute_rank(A: EvalMatrix) -> int:
    rows, cols = A.shape
    for r in range(min(rows, cols), 0, -1):
        for row_set in itertools.combinations(range(rows), r):
            for col_set in itertools.combinations(range(cols), r):
                if brute_nonsingular(A.submatrix(row_set, col_set)):
                    return r
    return 0


def brute_max_independent(
    monomials: Sequence[Monomial],
    points: Sequence[Point],
    limit: Optional[int] = None,
    budget: int = 200000,
) -> int:
    """
    Largest ``s`` such that some ``s`` monomials and ``s`` of the given points
    form a tropically non-singular evaluation matrix.

    Sizes are tried upwards; a non-singular matrix always has a non-singular
    minor one size smaller, so the first size without one ends the search.
    """

    polys = [TropPoly.monomial(m) for m in monomials]
    full = build_eval_matrix(polys, [p.coords for p in points])
    cap = min(len(polys), len(points)) if limit is None else min(limit, len(polys), len(points))
    best = 0
    checked = 0
    for s in range(1, cap + 1):
        found = False
        for rows in itertools.combinations(range(len(polys)), s):
            for cols in itertools.combinations(range(len(points)), s):
                checked += 1
                if checked > budget:
                    raise BudgetExceededError(f"brute-force subset search exceeded {budget} submatrices")
                if brute_nonsingular(full.submatrix(rows, cols)):
                    found = True
                    break
            if found:
                break
        if not found:
            break
        best = s
    logger.debug("Brute-force independence: %d after %d submatrices", best, checked)
    return best


def random_rational(rng: random.Random, low: int = -10, high: int = 10, denominators: Sequence[int] = (1, 2, 3)) -> Fraction:
    q = rng.choice(list(denominators))
    return Fraction(rng.randint(low * q, high * q), q)


def random_matrix(rng: random.Random, size: int, low: int = -10, high: int = 10) -> EvalMatrix:
    return EvalMatrix.of([[random_rational(rng, low, high) for _ in range(size)] for _ in range(size)])
