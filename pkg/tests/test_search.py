"""
Independence Search Test Suite

Test Coverage:
- Class deduplication of monomials on a prevariety
- Exact maxima on point sets, lines and unions of lines
- Node budget exhaustion (lower bound only)
- Agreement with the brute-force subset search on finite point sets
- Equivariance under a swap of the coordinates

Usage:
    pytest tests/test_search.py -v
"""

import logging

import pytest

from tropdeg.algebra.polynomials import Monomial, Point
from tropdeg.geometry.prevariety import Prevariety, Segment
from tropdeg.hilbert.grids import MonomialGrid
from tropdeg.independence import (
    brute_max_independent,
    class_representatives,
    search_max_independent,
    verify_certificate,
)
from tropdeg.independence.search import piece_class_count, witness_candidates


def grid(k, shape="simplex"):
    return MonomialGrid(2, k, shape).monomials()


def test_class_representatives_on_the_diagonal(diagonal):
    reps = class_representatives(grid(1), diagonal)
    assert reps == [Monomial((0, 0)), Monomial((0, 1))]
    assert piece_class_count(grid(1), diagonal) == 2
    assert len(class_representatives(grid(3), diagonal)) == 4


def test_class_representatives_on_points(two_points):
    assert len(class_representatives(grid(1), two_points)) == 3
    assert piece_class_count(grid(1), two_points) == 2


def test_search_on_two_points_is_exact(two_points):
    result = search_max_independent(grid(1), two_points)
    assert result.size == 2
    assert result.exact
    assert result.upper == 2
    assert result.classes == 3
    assert verify_certificate(result.certificate, two_points)


@pytest.mark.parametrize("k, expected", [(1, 3), (2, 5)])
def test_search_on_the_anti_diagonal(anti_diagonal, k, expected):
    result = search_max_independent(grid(k), anti_diagonal)
    assert result.size == expected
    assert result.exact
    assert not result.lower_bound_only
    assert result.certificate.size == expected
    assert verify_certificate(result.certificate, anti_diagonal)


def test_search_on_crossing_lines(cross_lines):
    result = search_max_independent(grid(1), cross_lines)
    assert result.classes == 3
    assert result.size == 3
    assert result.exact


def test_budget_exhaustion_returns_a_lower_bound(anti_diagonal, caplog):
    with caplog.at_level(logging.WARNING, logger="tropdeg"):
        result = search_max_independent(grid(2), anti_diagonal, budget=1)
    assert result.lower_bound_only
    assert not result.exact
    assert result.size == 1
    assert result.upper == 5
    assert "budget" in caplog.text


def test_empty_monomial_list():
    V = Prevariety.from_points([Point.of([0, 0])])
    result = search_max_independent([], V)
    assert result.size == 0 and result.exact and result.certificate is None


def test_witness_candidates_stay_in_the_prevariety(cross_lines):
    reps = class_representatives(grid(2), cross_lines)
    points = witness_candidates(reps, cross_lines, depth=1)
    assert points
    assert all(cross_lines.contains(p.coords) for p in points)
    assert len(points) == len(set(points))


@pytest.mark.parametrize(
    "coords",
    [
        [[0, 0], [1, "1/2"]],
        [[0, 0], [1, 0], [0, 1]],
        [[0, 0], [1, 2], [2, 1], [3, 3]],
    ],
)
def test_search_matches_brute_force_on_points(coords):
    points = [Point.of(c) for c in coords]
    V = Prevariety.from_points(points)
    monomials = grid(2)
    result = search_max_independent(monomials, V)
    assert result.exact
    assert result.size == brute_max_independent(monomials, points)


@pytest.fixture
def steep_segment():
    return Prevariety.from_segments([Segment(Point.of([1, 0]), (1, 2), 0, 3)])


@pytest.mark.parametrize("name", ["anti_diagonal", "cross_lines", "two_points", "steep_segment"])
@pytest.mark.parametrize("k", [1, 2])
def test_search_commutes_with_swapping_coordinates(request, name, k):
    V = request.getfixturevalue(name)
    perm = (1, 0)
    monomials = grid(k, "box")
    result = search_max_independent(monomials, V)
    moved = result.certificate.permute(perm)
    assert verify_certificate(moved, V.permute(perm))
    swapped = search_max_independent([m.permute(perm) for m in monomials], V.permute(perm), seed=moved)
    assert swapped.classes == result.classes
    assert swapped.upper == result.upper
    assert result.size <= swapped.size <= swapped.upper
    if result.exact:
        assert swapped.size == result.size
