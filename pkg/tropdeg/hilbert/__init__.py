"""
Tropical Hilbert Functions

Monomial grids (simplex and box), class counting modulo a direction space,
exact and bounded Hilbert values of polyhedra, point sets and unions, and
empirical polynomial fits of the resulting sequences.

Usage:
    from tropdeg.hilbert import MonomialGrid, count_classes, th_polyhedron
    count_classes([(1, -1)], MonomialGrid(2, 2)).count   # 5
"""

from .classes import ClassTable, class_counts, class_slopes, count_classes, line_formula_check
from .fitting import PolynomialFit, eventual_poly_fit
from .functions import HilbertRecord, hilbert_sweep, hilbert_value, th_points, th_polyhedron, th_union_bounds
from .grids import BOX, SHAPES, SIMPLEX, MonomialGrid

__all__ = [
    "BOX",
    "ClassTable",
    "HilbertRecord",
    "MonomialGrid",
    "PolynomialFit",
    "SHAPES",
    "SIMPLEX",
    "class_counts",
    "class_slopes",
    "count_classes",
    "eventual_poly_fit",
    "hilbert_sweep",
    "hilbert_value",
    "line_formula_check",
    "th_points",
    "th_polyhedron",
    "th_union_bounds",
]
