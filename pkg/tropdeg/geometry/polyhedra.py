"""
Rational Polyhedra in H-Representation

A polyhedron is a finite list of half-spaces ``<a, x> >= c`` and hyperplanes
``<a, x> = c``. Construction runs an exact analysis on ``cdd`` matrices in
fraction arithmetic: feasibility, implicit equalities (the ``lin_set`` of the
canonical form), the direction space ``L`` (canonical RREF basis) and a
relative-interior point.

Features:
- Exact linear programs through ``cdd.LinProg``
- Dimension and direction basis from explicit + implicit equalities
- Relative-interior point (all non-equality constraints strict)
- Coordinates on the affine hull (pivot coordinates of the RREF basis)
- Translation and coordinate permutation

Usage:
    P = Polyhedron.from_constraints([Halfspace.of([1, 1], 0, "=")], n=2)
    m, L = direction_and_dim(P)      # 1, [(1, -1)]
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import cdd

from ..algebra.polynomials import Point
from ..algebra.scalars import to_fraction
from ..errors import DimensionMismatchError, EmptyPolyhedronError
from .linalg import Vector, canonical_basis, dot, nullspace, rref

logger = logging.getLogger(__name__)

GE = ">="
EQ = "="
_RELATIONS = {">=": GE, "≥": GE, "=": EQ, "==": EQ}

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_INFEASIBLE_STATUSES = (cdd.LPStatusType.INCONSISTENT, cdd.LPStatusType.STRUC_INCONSISTENT)


@dataclass(frozen=True)
class LPResult:
    status: str
    x: Optional[Tuple[Fraction, ...]] = None
    value: Optional[Fraction] = None

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


def _cdd_matrix(
    ge_rows: Sequence[Sequence[object]],
    ge_rhs: Sequence[object],
    eq_rows: Sequence[Sequence[object]] = (),
    eq_rhs: Sequence[object] = (),
) -> Optional[cdd.Matrix]:
    """Rows ``[-c, a...]`` (``a.x - c >= 0``); equalities go to ``lin_set``."""

    ge = [[-Fraction(c), *(Fraction(a) for a in row)] for row, c in zip(ge_rows, ge_rhs)]
    eq = [[-Fraction(c), *(Fraction(a) for a in row)] for row, c in zip(eq_rows, eq_rhs)]
    if not ge and not eq:
        return None
    if ge:
        mat = cdd.Matrix(ge, linear=False, number_type="fraction")
        if eq:
            mat.extend(eq, linear=True)
    else:
        mat = cdd.Matrix(eq, linear=True, number_type="fraction")
    mat.rep_type = cdd.RepType.INEQUALITY
    return mat


def solve_lp(
    objective: Sequence[object],
    ge_rows: Sequence[Sequence[object]],
    ge_rhs: Sequence[object],
    eq_rows: Sequence[Sequence[object]] = (),
    eq_rhs: Sequence[object] = (),
    maximize: bool = False,
) -> LPResult:
    """
    Optimize ``<objective, x>`` subject to ``ge_rows x >= ge_rhs`` and
    ``eq_rows x = eq_rhs``, exactly.
    """

    width = len(objective)
    mat = _cdd_matrix(ge_rows, ge_rhs, eq_rows, eq_rhs)
    if mat is None:
        if all(Fraction(c) == 0 for c in objective):
            return LPResult(OPTIMAL, tuple(Fraction(0) for _ in range(width)), Fraction(0))
        return LPResult(UNBOUNDED)
    mat.obj_type = cdd.LPObjType.MAX if maximize else cdd.LPObjType.MIN
    mat.obj_func = (0, *(Fraction(c) for c in objective))
    lp = cdd.LinProg(mat)
    lp.solve()
    if lp.status == cdd.LPStatusType.OPTIMAL:
        x = tuple(Fraction(v) for v in lp.primal_solution)
        return LPResult(OPTIMAL, x, Fraction(lp.obj_value))
    if lp.status in _INFEASIBLE_STATUSES:
        return LPResult(INFEASIBLE)
    return LPResult(UNBOUNDED)


@dataclass(frozen=True)
class Halfspace:
    """Constraint ``<normal, x> >= constant`` or ``<normal, x> = constant``."""

    normal: Tuple[Fraction, ...]
    constant: Fraction
    relation: str = GE

    def __post_init__(self) -> None:
        object.__setattr__(self, "normal", tuple(to_fraction(a) for a in self.normal))
        object.__setattr__(self, "constant", to_fraction(self.constant))
        if self.relation not in _RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "relation", _RELATIONS[self.relation])
        if all(a == 0 for a in self.normal):
            raise ValueError("half-space normal must be nonzero")

    @classmethod
    def of(cls, normal: Sequence[object], constant: object, relation: str = GE) -> "Halfspace":
        return cls(tuple(normal), constant, relation)

    @property
    def is_equality(self) -> bool:
        return self.relation == EQ

    def slack(self, x: Sequence[Fraction]) -> Fraction:
        return dot(self.normal, x) - self.constant

    def satisfied_by(self, x: Sequence[Fraction]) -> bool:
        value = self.slack(x)
        return value == 0 if self.is_equality else value >= 0

    def translate(self, offset: Sequence[Fraction]) -> "Halfspace":
        return Halfspace(self.normal, self.constant + dot(self.normal, offset), self.relation)

    def permute(self, perm: Sequence[int]) -> "Halfspace":
        return Halfspace(tuple(self.normal[p] for p in perm), self.constant, self.relation)


@dataclass(frozen=True)
class Polyhedron:
    """Nonempty rational polyhedron with its exact affine structure."""

    constraints: Tuple[Halfspace, ...]
    n: int
    dim: int = field(init=False)
    directions: Tuple[Vector, ...] = field(init=False)
    interior_point: Point = field(init=False)
    implicit_equalities: Tuple[int, ...] = field(init=False)

    def __post_init__(self) -> None:
        for h in self.constraints:
            if len(h.normal) != self.n:
                raise DimensionMismatchError(f"constraint of length {len(h.normal)} in R^{self.n}")
        implicit, point = _analyse(self.constraints, self.n)
        equalities = [h.normal for i, h in enumerate(self.constraints) if h.is_equality or i in implicit]
        directions = tuple(canonical_basis(nullspace(equalities, self.n))) if equalities else tuple(
            canonical_basis(_identity(self.n))
        )
        object.__setattr__(self, "implicit_equalities", tuple(sorted(implicit)))
        object.__setattr__(self, "interior_point", Point(point))
        object.__setattr__(self, "directions", directions)
        object.__setattr__(self, "dim", len(directions))

    # -- construction ---------------------------------------------------------
    @classmethod
    def from_constraints(cls, constraints: Sequence[Halfspace], n: int) -> "Polyhedron":
        return cls(tuple(constraints), n)

    @classmethod
    def from_point(cls, point: Sequence[object]) -> "Polyhedron":
        coords = [to_fraction(c) for c in point]
        n = len(coords)
        return cls(
            tuple(Halfspace(_unit(n, i), c, EQ) for i, c in enumerate(coords)),
            n,
        )

    @classmethod
    def box(cls, lower: Sequence[object], upper: Sequence[object]) -> "Polyhedron":
        n = len(lower)
        constraints: List[Halfspace] = []
        for i in range(n):
            constraints.append(Halfspace(_unit(n, i), lower[i], GE))
            constraints.append(Halfspace(tuple(-a for a in _unit(n, i)), -to_fraction(upper[i]), GE))
        return cls(tuple(constraints), n)

    # -- queries -----------------------------------------------------------------
    def contains(self, x: Sequence[Fraction]) -> bool:
        if len(x) != self.n:
            raise DimensionMismatchError(f"point in R^{len(x)} for polyhedron in R^{self.n}")
        return all(h.satisfied_by(x) for h in self.constraints)

    def in_relative_interior(self, x: Sequence[Fraction]) -> bool:
        """Inside, with every constraint that is not an (implicit) equality strict."""

        if not self.contains(x):
            return False
        return all(
            h.slack(x) > 0
            for i, h in enumerate(self.constraints)
            if not h.is_equality and i not in self.implicit_equalities
        )

    @property
    def pivot_coordinates(self) -> Tuple[int, ...]:
        """Coordinates whose projection of ``L`` is the identity matrix."""

        return tuple(rref(self.directions)[1]) if self.directions else ()

    def affine_coordinates(self, exponents: Sequence[object]) -> Vector:
        """
        Linear part of ``<a, x>`` on the affine hull, expressed in the pivot
        coordinates: ``<a, x> = const + <b, x_J>`` with ``b = (<l_k, a>)_k``.
        """

        return tuple(dot(row, [Fraction(e) for e in exponents]) for row in self.directions)

    def point_from_coordinates(self, values: Sequence[Fraction]) -> Point:
        """Point of the affine hull whose pivot coordinates equal ``values``."""

        base = self.interior_point.coords
        result = list(base)
        for row, col, value in zip(self.directions, self.pivot_coordinates, values):
            shift = Fraction(value) - base[col]
            if shift:
                result = [r + shift * d for r, d in zip(result, row)]
        return Point(tuple(result))

    def extent_along(self, vector: Sequence[Fraction]) -> Tuple[Optional[Fraction], Optional[Fraction]]:
        """Minimum and maximum of ``<vector, x>`` over the polyhedron (None if unbounded)."""

        ge_rows, ge_rhs, eq_rows, eq_rhs = _split(self.constraints)
        bounds: List[Optional[Fraction]] = []
        for maximize in (False, True):
            result = solve_lp(vector, ge_rows, ge_rhs, eq_rows, eq_rhs, maximize=maximize)
            bounds.append(result.value if result.status == OPTIMAL else None)
        return bounds[0], bounds[1]

    def is_subset_of(self, other: "Polyhedron") -> bool:
        if other.n != self.n:
            raise DimensionMismatchError(f"polyhedra in R^{self.n} and R^{other.n}")
        for h in other.constraints:
            low, high = self.extent_along(h.normal)
            if low is None or low < h.constant:
                return False
            if h.is_equality and high != h.constant:
                return False
        return True

    def translate(self, offset: Sequence[Fraction]) -> "Polyhedron":
        return Polyhedron(tuple(h.translate(offset) for h in self.constraints), self.n)

    def permute(self, perm: Sequence[int]) -> "Polyhedron":
        return Polyhedron(tuple(h.permute(perm) for h in self.constraints), self.n)

    def with_constraints(self, extra: Sequence[Halfspace]) -> "Polyhedron":
        return Polyhedron(self.constraints + tuple(extra), self.n)


def direction_and_dim(P: Polyhedron) -> Tuple[int, Tuple[Vector, ...]]:
    """Dimension ``m`` and canonical basis ``L`` of the direction space."""

    return P.dim, P.directions


def _unit(n: int, i: int) -> Tuple[Fraction, ...]:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def _identity(n: int) -> List[Tuple[Fraction, ...]]:
    return [_unit(n, i) for i in range(n)]


def _split(constraints: Sequence[Halfspace]):
    ge_rows = [h.normal for h in constraints if not h.is_equality]
    ge_rhs = [h.constant for h in constraints if not h.is_equality]
    eq_rows = [h.normal for h in constraints if h.is_equality]
    eq_rhs = [h.constant for h in constraints if h.is_equality]
    return ge_rows, ge_rhs, eq_rows, eq_rhs


def _interior_lp(
    ge: Sequence[Tuple[Sequence[Fraction], Fraction]],
    eq: Sequence[Tuple[Sequence[Fraction], Fraction]],
    n: int,
) -> LPResult:
    # variables (x, s): maximize s with <a_i, x> - s >= c_i and s <= 1
    ge_rows = [list(a) + [Fraction(-1)] for a, _ in ge] + [[Fraction(0)] * n + [Fraction(-1)]]
    ge_rhs = [c for _, c in ge] + [Fraction(-1)]
    eq_rows = [list(a) + [Fraction(0)] for a, _ in eq]
    eq_rhs = [c for _, c in eq]
    return solve_lp([0] * n + [1], ge_rows, ge_rhs, eq_rows, eq_rhs, maximize=True)


def _analyse(constraints: Sequence[Halfspace], n: int) -> Tuple[set, Tuple[Fraction, ...]]:
    """Return (indices of implicit equalities, relative-interior point)."""

    ge = [(h.normal, h.constant) for h in constraints if not h.is_equality]
    eq = [(h.normal, h.constant) for h in constraints if h.is_equality]
    result = _interior_lp(ge, eq, n)
    if result.status == INFEASIBLE:
        raise EmptyPolyhedronError("constraints have no common solution")
    assert result.status == OPTIMAL and result.x is not None
    if result.value > 0:
        return set(), result.x[:n]

    mat = _cdd_matrix([a for a, _ in ge], [c for _, c in ge], [a for a, _ in eq], [c for _, c in eq])
    mat.canonicalize()
    facets, hull = [], []
    for i in range(mat.row_size):
        row = [Fraction(v) for v in mat[i]]
        (hull if i in mat.lin_set else facets).append((tuple(row[1:]), -row[0]))
    result = _interior_lp(facets, hull, n)
    if result.status != OPTIMAL or result.x is None or (facets and result.value <= 0):
        raise EmptyPolyhedronError("failed to find a relative-interior point")
    point = result.x[:n]
    implicit = {i for i, h in enumerate(constraints) if not h.is_equality and h.slack(point) == 0}
    logger.debug("Detected implicit equalities %s", sorted(implicit))
    return implicit, point
