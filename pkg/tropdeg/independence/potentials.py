"""
Dual Potentials for Diagonal Matchings

If the identity is the unique minimum matching of a square matrix ``A``,
there are potentials ``w`` with ``A[i][i] + w_i < A[l][i] + w_l`` for every
column ``i`` and row ``l != i``. They are shortest-path distances in the
difference-constraint graph ``l -> i`` with weight
``A[l][i] - A[i][i] - delta`` (``delta = gap / (s + 1)``), measured from a
virtual source joined to every row by a zero-weight edge.
"""

from __future__ import annotations

import logging
from typing import Optional, Tuple

import networkx as nx

from ..algebra.scalars import PerturbedScalar, ZERO
from ..errors import InvariantViolation, PreconditionError
from .matching import EvalMatrix, MatchingResult, min_matching

logger = logging.getLogger(__name__)

SOURCE = "source"


def constraint_graph(A: EvalMatrix, delta: PerturbedScalar) -> nx.DiGraph:
    size = A.shape[0]
    graph = nx.DiGraph()
    graph.add_nodes_from(range(size))
    for i in range(size):
        for l in range(size):
            if l != i and A[l, i].is_finite:
                graph.add_edge(l, i, weight=A[l, i] - A[i, i] - delta)
    graph.add_edges_from(((SOURCE, i) for i in range(size)), weight=ZERO)
    return graph


def dual_potentials(A: EvalMatrix, matching: Optional[MatchingResult] = None) -> Tuple[PerturbedScalar, ...]:
    rows, cols = A.shape
    if rows != cols or rows == 0:
        raise PreconditionError("dual potentials need a nonempty square matrix")
    size = rows
    result = matching if matching is not None else min_matching(A)
    if not result.unique or result.permutation != tuple(range(size)):
        raise PreconditionError("the identity must be the unique minimum matching")
    if size == 1:
        return (ZERO,)

    delta = result.gap / (size + 1) if result.gap.is_finite else PerturbedScalar.of(1)
    graph = constraint_graph(A, delta)
    if nx.negative_edge_cycle(graph, weight="weight"):
        raise InvariantViolation("negative cycle in the potential system")
    lengths = nx.single_source_bellman_ford_path_length(graph, SOURCE, weight="weight")
    dist = tuple(PerturbedScalar.of(lengths[i]) for i in range(size))

    for i in range(size):
        for l in range(size):
            if l != i and not A[i, i] + dist[i] < A[l, i] + dist[l]:
                raise InvariantViolation(f"potentials violate column {i} against row {l}")
    logger.debug("Potentials %s (delta %s)", dist, delta)
    return dist
