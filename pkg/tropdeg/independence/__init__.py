"""
Tropical Independence

Evaluation matrices, exact assignment problems (tropical non-singularity and
rank), dual potentials, certificates of independence with exact verification,
co-ordered witness points and the budgeted maximal-independence search.

Usage:
    from tropdeg.independence import certify_from_points, verify_certificate
    cert = certify_from_points(members, points, V)
    verify_certificate(cert, V).ok
"""

from .certificates import Certificate, VerificationResult, certify_from_points, co_ordered_points, verify_certificate
from .matching import EvalMatrix, MatchingResult, build_eval_matrix, is_trop_nonsingular, min_matching, tropical_rank
from .oracle import brute_matching, brute_max_independent, brute_nonsingular, brute_rank
from .potentials import dual_potentials
from .search import SearchResult, class_representatives, search_max_independent
from .serialization import parse_certificate, parse_poly, serialize_certificate, serialize_poly

__all__ = [
    "Certificate",
    "EvalMatrix",
    "MatchingResult",
    "SearchResult",
    "VerificationResult",
    "brute_matching",
    "brute_max_independent",
    "brute_nonsingular",
    "brute_rank",
    "build_eval_matrix",
    "certify_from_points",
    "class_representatives",
    "co_ordered_points",
    "dual_potentials",
    "is_trop_nonsingular",
    "min_matching",
    "parse_certificate",
    "parse_poly",
    "search_max_independent",
    "serialize_certificate",
    "serialize_poly",
    "tropical_rank",
    "verify_certificate",
]
