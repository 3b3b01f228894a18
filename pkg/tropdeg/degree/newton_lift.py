"""
Newton Lift of a Certificate on a One-Dimensional Prevariety

The support of a certificate ``min_j (b_j + <a_j, x>)`` is lifted to the
points ``(a_j, b_j)``. On every branch the restriction is a concave
piecewise-linear function; consecutive pieces of its lower envelope are
adjacent support points, and the adjacency graph ``G`` has at most as many
connected components as the prevariety has branches.

When some envelope has coinciding lines or three lines through one vertex,
coefficients are perturbed symbolically (``b_j + j^p * eta``, smallest
working power ``p``) so that every vertex separates exactly two terms.

Features:
- build_newton_lift: envelopes per segment, networkx adjacency graph,
  component bound asserted per call
- lower_hull_edge_check: exact supporting-plane test for every G-edge
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import networkx as nx

from ..algebra.polynomials import Envelope, Monomial, TropPoly, lower_envelope, restrict_to_segment
from ..algebra.scalars import PerturbedScalar
from ..errors import InvariantViolation, PreconditionError
from ..geometry.prevariety import Prevariety
from ..independence.certificates import Certificate, verify_certificate

logger = logging.getLogger(__name__)

SupportPoint = Tuple[Monomial, PerturbedScalar]

_PERTURBATION_POWERS = (1, 2, 3)


@dataclass(frozen=True)
class EdgeCheck:
    edge: Tuple[int, int]
    supported: bool
    interval: Tuple[Optional[PerturbedScalar], Optional[PerturbedScalar]]


@dataclass(frozen=True)
class NewtonLift:
    """
    ``support[j]`` is member ``j`` lifted with its (possibly perturbed)
    coefficient; ``graph`` edges carry the segment index and vertex parameter
    where the two terms meet.
    """

    support: Tuple[SupportPoint, ...]
    envelopes: Tuple[Envelope, ...]
    graph: nx.Graph = field(compare=False)
    perturbed: bool
    branch_count: int

    @property
    def components(self) -> int:
        return nx.number_connected_components(self.graph)

    @property
    def edges(self) -> List[Tuple[int, int]]:
        return sorted(tuple(sorted(e)) for e in self.graph.edges)


def _support(cert: Certificate) -> List[SupportPoint]:
    support = []
    for j, (f, b) in enumerate(cert.members):
        if len(f.terms) != 1:
            raise PreconditionError(f"member {j + 1} is not a monomial")
        monomial, coeff = f.terms[0]
        support.append((monomial, coeff + b))
    return support


def _envelopes(support: List[SupportPoint], V: Prevariety) -> List[Envelope]:
    poly = TropPoly(tuple(support))
    return [lower_envelope(restrict_to_segment(poly, seg)) for seg in V.segments]


def build_newton_lift(cert: Certificate, V: Prevariety) -> NewtonLift:
    if V.n != 2:
        raise PreconditionError(f"the Newton lift is planar, got R^{V.n}")
    if V.dim != 1 or not V.one_dimensional_view:
        raise PreconditionError("the Newton lift needs a one-dimensional prevariety")
    check = verify_certificate(cert, V)
    if not check:
        raise PreconditionError(f"certificate does not verify: {check.diagnostic}")

    support = _support(cert)
    envelopes = _envelopes(support, V)
    perturbed = not all(env.is_generic for env in envelopes)
    if perturbed:
        original = support
        # slopes proportional to j stay concurrent under j * eta
        for power in _PERTURBATION_POWERS:
            support = [(m, c + PerturbedScalar.eta(j**power)) for j, (m, c) in enumerate(original)]
            envelopes = _envelopes(support, V)
            if all(env.is_generic for env in envelopes):
                break
        else:
            logger.warning("Envelopes stay degenerate after perturbation")
        logger.debug("Applied symbolic perturbation (power %d) to %d support points", power, len(support))

    graph = nx.Graph()
    graph.add_nodes_from(range(len(support)))
    for index, envelope in enumerate(envelopes):
        for vertex in envelope.vertices:
            if vertex.left != vertex.right and not graph.has_edge(vertex.left, vertex.right):
                graph.add_edge(vertex.left, vertex.right, segment=index, t=vertex.t)

    lift = NewtonLift(tuple(support), tuple(envelopes), graph, perturbed, V.branch_count)
    if lift.components > V.branch_count:
        raise InvariantViolation(f"{lift.components} components in G for {V.branch_count} branches")
    return lift


def lower_hull_edge_check(lift: NewtonLift) -> List[EdgeCheck]:
    """
    For every G-edge ``(i, j)`` decide whether an affine function equals the
    lifted coefficients at ``a_i`` and ``a_j`` and lies strictly below all
    other lifted points.
    """

    points = [(tuple(Fraction(e) for e in m.exponents), c) for m, c in lift.support]
    results = []
    for i, j in lift.edges:
        a_i, c_i = points[i]
        a_j, c_j = points[j]
        d = (a_j[0] - a_i[0], a_j[1] - a_i[1])
        norm = d[0] * d[0] + d[1] * d[1]
        normal = (-d[1], d[0])
        lo: Optional[PerturbedScalar] = None
        hi: Optional[PerturbedScalar] = None
        feasible = True
        for l, (a_l, c_l) in enumerate(points):
            if l in (i, j):
                continue
            rel = (a_l[0] - a_i[0], a_l[1] - a_i[1])
            along = (rel[0] * d[0] + rel[1] * d[1]) / norm
            base_value = c_i + (c_j - c_i).scale(along)
            room = c_l - base_value
            across = rel[0] * normal[0] + rel[1] * normal[1]
            if across == 0:
                feasible = feasible and room > 0
            elif across > 0:
                bound = room / across
                hi = bound if hi is None or bound < hi else hi
            else:
                bound = room / across
                lo = bound if lo is None or bound > lo else lo
        if lo is not None and hi is not None and not lo < hi:
            feasible = False
        results.append(EdgeCheck((i, j), feasible, (lo, hi)))
    failed = [r.edge for r in results if not r.supported]
    if failed:
        logger.info("Edges without a supporting plane: %s", failed)
    return results
