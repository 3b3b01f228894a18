"""
Core Min-Plus Algebra

Exact scalars (rationals with +inf and a formal infinitesimal), tropical
monomials and polynomials, evaluation with argmin sets, and restrictions of
polynomials to segments together with their exact lower envelopes.

Usage:
    from tropdeg.algebra import PerturbedScalar, TropPoly, Point, eval_poly
"""

from .polynomials import (
    Envelope,
    EnvelopePiece,
    EnvelopeVertex,
    Monomial,
    Point,
    RestrictionPiece,
    TropPoly,
    UnivariateRestriction,
    eval_poly,
    lower_envelope,
    poly_degree,
    restrict_to_segment,
)
from .scalars import (
    INFINITY,
    ZERO,
    ExtRat,
    PerturbedScalar,
    format_rational,
    format_scalar,
    parse_rational,
    parse_scalar,
    to_fraction,
)

__all__ = [
    "Envelope",
    "EnvelopePiece",
    "EnvelopeVertex",
    "ExtRat",
    "INFINITY",
    "Monomial",
    "PerturbedScalar",
    "Point",
    "RestrictionPiece",
    "TropPoly",
    "UnivariateRestriction",
    "ZERO",
    "eval_poly",
    "format_rational",
    "format_scalar",
    "lower_envelope",
    "parse_rational",
    "parse_scalar",
    "poly_degree",
    "restrict_to_segment",
    "to_fraction",
]
