"""
Evaluation Matrices and Exact Assignment Problems

The tropical determinant of a square matrix is a minimum-weight perfect
matching; the matrix is tropically non-singular when that minimum is attained
by exactly one permutation. Entries are ``PerturbedScalar`` values, which are
encoded as Python integers (common denominators plus a lexicographic weight
for the infinitesimal part) before solving, so both solvers stay exact.

Features:
- build_eval_matrix: entry (i, j) = f_i(v_j)
- min_matching: permutation enumeration up to the configured size, shortest
  augmenting paths (Hungarian method) beyond it
- Uniqueness and gap by re-solving with each optimal edge forbidden
- is_trop_nonsingular and brute-force tropical_rank with a size budget

Usage:
    A = EvalMatrix.of([[0, 1], [1, 0]])
    result = min_matching(A)        # identity, value 0, unique, gap 2
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from ..algebra.polynomials import Point, TropPoly, eval_poly
from ..algebra.scalars import INFINITY, PerturbedScalar
from ..errors import DimensionMismatchError, NoFiniteMatchingError, PreconditionError, RankBudgetExceededError
from ..settings import get_settings

logger = logging.getLogger(__name__)

IntCosts = List[List[Optional[int]]]


@dataclass(frozen=True)
class EvalMatrix:
    """Rectangular matrix of scalars; rows are polynomials, columns points."""

    entries: Tuple[Tuple[PerturbedScalar, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(PerturbedScalar.of(x) for x in row) for row in self.entries)
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("evaluation matrix must be rectangular")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def of(cls, rows: Sequence[Sequence[object]]) -> "EvalMatrix":
        return cls(tuple(tuple(row) for row in rows))

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.entries), (len(self.entries[0]) if self.entries else 0)

    @property
    def is_square(self) -> bool:
        rows, cols = self.shape
        return rows == cols

    def __getitem__(self, index: Tuple[int, int]) -> PerturbedScalar:
        i, j = index
        return self.entries[i][j]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "EvalMatrix":
        return EvalMatrix(tuple(tuple(self.entries[i][j] for j in cols) for i in rows))

    def permute_columns(self, order: Sequence[int]) -> "EvalMatrix":
        """Column ``j`` of the result is column ``order[j]`` of this matrix."""

        return EvalMatrix(tuple(tuple(row[j] for j in order) for row in self.entries))

    def matching_value(self, permutation: Sequence[int]) -> PerturbedScalar:
        total = PerturbedScalar.of(0)
        for i, j in enumerate(permutation):
            total = total + self.entries[i][j]
        return total


@dataclass(frozen=True)
class MatchingResult:
    """
    Minimum-weight perfect matching.

    ``permutation[i]`` is the column matched to row ``i``; ``gap`` is the
    second-best matching value minus the optimum (+inf if there is none).
    """

    permutation: Tuple[int, ...]
    value: PerturbedScalar
    unique: bool
    gap: PerturbedScalar


def build_eval_matrix(fs: Sequence[TropPoly], vs: Sequence[Sequence[Fraction]]) -> EvalMatrix:
    for f in fs:
        for v in vs:
            if len(v) != f.n:
                raise DimensionMismatchError(f"point in R^{len(v)} for polynomial in {f.n} variables")
    return EvalMatrix(tuple(tuple(eval_poly(f, tuple(v))[0] for v in vs) for f in fs))


def _integer_costs(A: EvalMatrix) -> IntCosts:
    """Order-preserving integer encoding of the entries (None for +inf)."""

    finite = [x for row in A.entries for x in row if x.is_finite]
    base_den = 1
    eps_den = 1
    for x in finite:
        base_den = math.lcm(base_den, x.real.denominator)
        eps_den = math.lcm(eps_den, x.eps_coeff.denominator)
    eps_ints = [abs(int(x.eps_coeff * eps_den)) for x in finite]
    size = max(len(A.entries), 1)
    weight = 2 * size * max(eps_ints, default=0) + 1
    return [
        [
            int(x.real * base_den) * weight + int(x.eps_coeff * eps_den) if x.is_finite else None
            for x in row
        ]
        for row in A.entries
    ]


def _enumerate(costs: IntCosts) -> Optional[Tuple[Tuple[int, ...], int]]:
    size = len(costs)
    best: Optional[Tuple[Tuple[int, ...], int]] = None
    for perm in itertools.permutations(range(size)):
        total = 0
        for i, j in enumerate(perm):
            c = costs[i][j]
            if c is None:
                break
            total += c
        else:
            if best is None or total < best[1]:
                best = (perm, total)
    return best


def _hungarian(costs: IntCosts) -> Optional[Tuple[Tuple[int, ...], int]]:
    """Shortest augmenting path assignment with row/column potentials."""

    n = len(costs)
    finite = [abs(c) for row in costs for c in row if c is not None]
    if not finite:
        return None
    big = 2 * n * (max(finite) + 1) + 1
    cost = [[c if c is not None else big for c in row] for row in costs]

    u = [0] * (n + 1)
    v = [0] * (n + 1)
    p = [0] * (n + 1)
    way = [0] * (n + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv: List[float] = [math.inf] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta: float = math.inf
            j1 = 0
            for j in range(1, n + 1):
                if not used[j]:
                    cur = cost[i0 - 1][j - 1] - u[i0] - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while True:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
            if j0 == 0:
                break

    assignment = [-1] * n
    for j in range(1, n + 1):
        assignment[p[j] - 1] = j - 1
    if any(costs[i][assignment[i]] is None for i in range(n)):
        return None
    return tuple(assignment), sum(costs[i][assignment[i]] for i in range(n))


def _solve(costs: IntCosts) -> Optional[Tuple[Tuple[int, ...], int]]:
    if len(costs) <= get_settings().budgets.matching_enumeration:
        return _enumerate(costs)
    return _hungarian(costs)


def min_matching(A: EvalMatrix) -> MatchingResult:
    """Optimal assignment, uniqueness and gap, all decided exactly."""

    rows, cols = A.shape
    if rows != cols or rows == 0:
        raise PreconditionError(f"min_matching needs a nonempty square matrix, got {rows}x{cols}")
    costs = _integer_costs(A)
    optimum = _solve(costs)
    if optimum is None:
        raise NoFiniteMatchingError("no finite matching")
    permutation, _ = optimum
    value = A.matching_value(permutation)

    second: Optional[PerturbedScalar] = None
    for i, j in enumerate(permutation):
        forbidden = [row[:] for row in costs]
        forbidden[i][j] = None
        alternative = _solve(forbidden)
        if alternative is None:
            continue
        candidate = A.matching_value(alternative[0])
        if second is None or candidate < second:
            second = candidate
    gap = INFINITY if second is None else second - value
    logger.debug("Matching %s value %s gap %s", permutation, value, gap)
    return MatchingResult(tuple(permutation), value, gap > 0, gap)


def is_trop_nonsingular(A: EvalMatrix) -> bool:
    return min_matching(A).unique


def tropical_rank(A: EvalMatrix, bound: Optional[int] = None) -> int:
    """Largest r with a tropically non-singular r x r submatrix (exhaustive)."""

    limit = bound if bound is not None else get_settings().budgets.rank_bruteforce
    rows, cols = A.shape
    if rows > limit or cols > limit:
        raise RankBudgetExceededError(f"rank budget exceeded: {rows}x{cols} > {limit}")
    for r in range(min(rows, cols), 0, -1):
        for row_set in itertools.combinations(range(rows), r):
            for col_set in itertools.combinations(range(cols), r):
                try:
                    if is_trop_nonsingular(A.submatrix(row_set, col_set)):
                        return r
                except NoFiniteMatchingError:
                    continue
    return 0
