"""
Tropical Degree of One-Dimensional Prevarieties

Subadditive lower bounds and branch-slope upper bounds for the degree, the
Newton lift of a certificate, certificate refinement, the explicit star
recursion and the slopes of polynomials with halving coefficients.

Usage:
    from tropdeg.degree import degree_bounds, refine_certificate, star_lower_construct
"""

from .bounds import DegreeBounds, branch_slope, degree_bounds, subadditive_lower
from .concave import ConcaveSlopes, concave_slopes
from .newton_lift import EdgeCheck, NewtonLift, build_newton_lift, lower_hull_edge_check
from .refinement import RefinementParams, refine_certificate, run_refinement
from .star import (
    StarConstruction,
    StarSweep,
    StarSweepRow,
    StarUpperReport,
    star_B,
    star_constant,
    star_defect,
    star_lower_construct,
    star_sweep,
    star_upper_check,
)

__all__ = [
    "ConcaveSlopes",
    "DegreeBounds",
    "EdgeCheck",
    "NewtonLift",
    "RefinementParams",
    "StarConstruction",
    "StarSweep",
    "StarSweepRow",
    "StarUpperReport",
    "branch_slope",
    "build_newton_lift",
    "concave_slopes",
    "degree_bounds",
    "lower_hull_edge_check",
    "refine_certificate",
    "run_refinement",
    "star_B",
    "star_constant",
    "star_defect",
    "star_lower_construct",
    "star_sweep",
    "star_upper_check",
    "subadditive_lower",
]
