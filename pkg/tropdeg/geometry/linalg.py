"""
Exact Linear Algebra over the Rationals

Thin layer over ``sympy.Matrix`` with ``Rational`` entries: reduced
row-echelon form, rank, null spaces, square solves, orthogonal projectors
and primitive integer rescaling. Inputs and outputs are ``Fraction`` tuples
so the rest of the package never sees sympy types.

Usage:
    basis = nullspace([[1, -1]], 2)      # [(1, 1)]
    rows, pivots = rref([[2, 4], [1, 3]])
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

import sympy as sp

Vector = Tuple[Fraction, ...]


def as_matrix(rows: Sequence[Sequence[object]]) -> List[List[Fraction]]:
    return [[Fraction(x) for x in row] for row in rows]


def to_sympy(rows: Sequence[Sequence[object]]) -> sp.Matrix:
    values = as_matrix(rows)
    width = len(values[0]) if values else 0
    return sp.Matrix(len(values), width, [sp.Rational(x.numerator, x.denominator) for row in values for x in row])


def from_sympy(value: sp.Expr) -> Fraction:
    rational = sp.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


def _rows(matrix: sp.Matrix) -> List[Vector]:
    return [tuple(from_sympy(matrix[i, j]) for j in range(matrix.cols)) for i in range(matrix.rows)]


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((Fraction(a) * Fraction(b) for a, b in zip(u, v)), Fraction(0))


def rref(rows: Sequence[Sequence[object]]) -> Tuple[List[Vector], List[int]]:
    """Reduced row-echelon form (zero rows dropped) and pivot columns."""

    if not rows:
        return [], []
    reduced, pivots = to_sympy(rows).rref()
    return _rows(reduced)[: len(pivots)], list(pivots)


def rank(rows: Sequence[Sequence[object]]) -> int:
    return to_sympy(rows).rank() if rows else 0


def nullspace(rows: Sequence[Sequence[object]], width: int) -> List[Vector]:
    """Basis of ``{x : A x = 0}``, one vector per free column."""

    if not rows:
        return [tuple(Fraction(1 if j == i else 0) for j in range(width)) for i in range(width)]
    return [tuple(from_sympy(x) for x in column) for column in to_sympy(rows).nullspace()]


def canonical_basis(vectors: Sequence[Sequence[object]]) -> List[Vector]:
    """Deterministic basis of the span: the nonzero rows of the RREF."""

    return rref(vectors)[0] if vectors else []


def solve_square(matrix: Sequence[Sequence[object]], rhs: Sequence[object]) -> Vector:
    """Solve an invertible square system exactly."""

    A = to_sympy(matrix)
    if A.rows != A.cols or A.rank() < A.rows:
        raise ValueError("matrix is singular")
    b = to_sympy([[x] for x in rhs])
    return tuple(from_sympy(x) for x in A.LUsolve(b))


def primitive_integer_vector(vector: Sequence[object]) -> Tuple[Tuple[int, ...], Fraction]:
    """
    Scale a nonzero rational vector to a primitive integer vector.

    Returns ``(w, factor)`` with ``w = factor * vector``, ``factor > 0``.
    """

    values = [Fraction(x) for x in vector]
    if all(v == 0 for v in values):
        raise ValueError("zero vector has no primitive direction")
    denom = 1
    for v in values:
        denom = denom * v.denominator // gcd(denom, v.denominator)
    ints = [int(v * denom) for v in values]
    common = 0
    for i in ints:
        common = gcd(common, abs(i))
    return tuple(i // common for i in ints), Fraction(denom, common)


def projector(basis: Sequence[Vector]) -> List[Vector]:
    """Rows of ``(B B^T)^-1 B``: applied to ``v`` they give projection coordinates."""

    if not basis:
        return []
    B = to_sympy(basis)
    return _rows((B * B.T).inv() * B)


def apply(rows: Sequence[Vector], vector: Sequence[object]) -> Vector:
    values = [Fraction(x) for x in vector]
    return tuple(dot(row, values) for row in rows)


def projection_coordinates(basis: Sequence[Vector], vector: Sequence[object]) -> Vector:
    """Coordinates of the orthogonal projection of ``vector`` onto span(basis)."""

    return apply(projector(basis), vector)
