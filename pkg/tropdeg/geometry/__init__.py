"""
Polyhedral Geometry for Min-Plus Prevarieties

Exact rational linear algebra (sympy), exact linear programs (cdd), H-represented
polyhedra with their affine structure, and prevarieties (unions of
polyhedra) with explicit one-dimensional decompositions and stars.

Usage:
    from tropdeg.geometry import Polyhedron, Halfspace, Segment, Star
    from tropdeg.geometry import decompose_equations, star_to_prevariety
"""

from .polyhedra import EQ, GE, Halfspace, LPResult, Polyhedron, direction_and_dim, solve_lp
from .prevariety import (
    Prevariety,
    Segment,
    Star,
    contains,
    decompose_equations,
    segments_from_polyhedra,
    star_to_prevariety,
)

__all__ = [
    "EQ",
    "GE",
    "Halfspace",
    "LPResult",
    "Polyhedron",
    "Prevariety",
    "Segment",
    "Star",
    "contains",
    "decompose_equations",
    "direction_and_dim",
    "segments_from_polyhedra",
    "solve_lp",
    "star_to_prevariety",
]
