"""
Equivalence Classes of Monomials Modulo a Direction Space

Two monomials restrict to the same function (up to a constant) on a
polyhedron with direction space ``L`` iff their exponent difference is
orthogonal to ``L``. Every monomial is labelled by the exact orthogonal
projection of its exponent vector onto ``span(L)``, written in the RREF basis
of ``L``, and classes are counted by distinct labels.

Features:
- count_classes: class table for one grid
- class_counts / class_slopes: count sequences over k and their increments
- line_formula_check: closed-form line value next to the enumerated count
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import gcd
from typing import Dict, List, Sequence, Tuple

from ..algebra.polynomials import Monomial
from ..errors import InvariantViolation, PreconditionError
from ..geometry.linalg import Vector, apply, canonical_basis, projector
from .grids import BOX, SIMPLEX, MonomialGrid

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ClassTable:
    """Canonical label -> first monomial of that class (grid order)."""

    labels: Dict[Vector, Monomial]
    grid: MonomialGrid

    @property
    def count(self) -> int:
        return len(self.labels)

    @property
    def representatives(self) -> List[Monomial]:
        return list(self.labels.values())


def count_classes(L: Sequence[Sequence[object]], grid: MonomialGrid) -> ClassTable:
    basis = canonical_basis(L) if L else []
    for row in basis:
        if len(row) != grid.n:
            raise PreconditionError(f"direction of length {len(row)} for a grid in {grid.n} variables")
    rows = projector(basis)
    labels: Dict[Vector, Monomial] = {}
    for monomial in grid.monomials():
        label = apply(rows, monomial.exponents)
        labels.setdefault(label, monomial)
    logger.debug("t(k=%d, %s) = %d", grid.k, grid.shape, len(labels))
    return ClassTable(labels, grid)


def class_counts(L: Sequence[Sequence[object]], n: int, shape: str, ks: Sequence[int]) -> List[Tuple[int, int]]:
    """``(k, t_L(k))`` for every requested k; asserts monotonicity and simplex <= box."""

    rows: List[Tuple[int, int]] = []
    for k in ks:
        count = count_classes(L, MonomialGrid(n, k, shape)).count
        if shape == SIMPLEX and n > 1:
            box = count_classes(L, MonomialGrid(n, k, BOX)).count
            if count > box:
                raise InvariantViolation(f"simplex count {count} exceeds box count {box} at k={k}")
        rows.append((k, count))
    for (k1, c1), (k2, c2) in zip(rows, rows[1:]):
        if k2 > k1 and c2 < c1:
            raise InvariantViolation(f"class count decreased from {c1} (k={k1}) to {c2} (k={k2})")
    return rows


def class_slopes(L: Sequence[Sequence[object]], n: int, shape: str, ks: Sequence[int]) -> List[Tuple[int, int]]:
    """Increments ``t(k) - t(k-1)`` for consecutive requested k."""

    counts = class_counts(L, n, shape, ks)
    return [(k2, c2 - c1) for (k1, c1), (k2, c2) in zip(counts, counts[1:]) if k2 == k1 + 1]


def line_formula_check(p: int, q: int, k: int) -> Tuple[int, int, bool]:
    """Closed-form ``(|p|+|q|)(k-1)+1`` against enumeration on ``span{(q, -p)}``."""

    if k < 0:
        raise PreconditionError("k must be nonnegative")
    if p == 0 and q == 0:
        raise PreconditionError("(p, q) must be nonzero")
    if gcd(p, q) != 1:
        raise PreconditionError(f"p={p} and q={q} are not coprime")
    formula = (abs(p) + abs(q)) * (k - 1) + 1
    enumerated = count_classes([(q, -p)], MonomialGrid(2, k, SIMPLEX)).count
    return formula, enumerated, formula == enumerated
