"""
tropdeg: exact tropical Hilbert functions and degrees of min-plus prevarieties.

Subpackages:
- algebra: exact scalars, tropical polynomials, restrictions and envelopes
- geometry: rational polyhedra, prevarieties, segments and stars
- independence: tropical rank, certificates of independence, search
- hilbert: class counts and tropical Hilbert functions on monomial grids
- degree: degree bounds, Newton lifts, refinement and the star recursion
- cli: the ``tropdeg`` command-line tool
"""

__version__ = "0.1.0"
