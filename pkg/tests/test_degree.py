"""
Degree Bound Test Suite

Test Coverage:
- Subadditive lower bounds from observed Hilbert values
- Per-branch slopes of class counts
- degree_bounds on lines, point sets, unions and the tropical line star
- Slopes of halving-coefficient univariate polynomials, fixed and random

Usage:
    pytest tests/test_degree.py -v
"""

from fractions import Fraction

import random

import pytest

from tropdeg.algebra.polynomials import UnivariateRestriction
from tropdeg.algebra.scalars import INFINITY
from tropdeg.degree import DegreeBounds, branch_slope, concave_slopes, degree_bounds, subadditive_lower
from tropdeg.errors import InvariantViolation, PreconditionError
from tropdeg.geometry.polyhedra import Polyhedron
from tropdeg.geometry.prevariety import Prevariety
from tropdeg.hilbert import BOX, SIMPLEX


@pytest.mark.parametrize(
    "c, expected",
    [(0, Fraction(3)), (1, Fraction(2)), (2, Fraction(5, 3))],
)
def test_subadditive_lower(c, expected):
    assert subadditive_lower([(1, 3), (2, 5), (3, 7)], c) == expected


def test_subadditive_lower_validation():
    with pytest.raises(PreconditionError):
        subadditive_lower([], 1)
    with pytest.raises(PreconditionError):
        subadditive_lower([(1, 3)], -1)
    with pytest.raises(PreconditionError):
        subadditive_lower([(1, 3), (2, 2)], 0)
    with pytest.raises(PreconditionError):
        subadditive_lower([(0, 1)], 0)


@pytest.mark.parametrize(
    "direction, shape, slope",
    [
        ((1, -1), SIMPLEX, 2),
        ((1, 1), SIMPLEX, 1),
        ((1, 1), BOX, 2),
        ((1, 0), SIMPLEX, 1),
        ((-1, -1), BOX, 2),
    ],
)
def test_branch_slope(direction, shape, slope):
    assert branch_slope(direction, shape, 6) == slope


def test_degree_of_the_anti_diagonal(anti_diagonal):
    bounds = degree_bounds(anti_diagonal, kmax=4)
    assert bounds.lower == 2
    assert bounds.upper == 2


def test_degree_of_the_diagonal(diagonal):
    bounds = degree_bounds(diagonal, kmax=4)
    assert (bounds.lower, bounds.upper) == (1, 1)
    assert bounds.evidence[0].startswith("lower:")


def test_degree_of_a_point_set(two_points):
    bounds = degree_bounds(two_points)
    assert bounds.lower == bounds.upper == 0


def test_degree_of_crossing_lines(cross_lines):
    bounds = degree_bounds(cross_lines, kmax=2)
    assert bounds.upper == 3
    assert 1 <= bounds.lower <= 3


def test_star_bounds_on_the_box(tropical_line, tropical_line_prevariety):
    bounds = degree_bounds(tropical_line_prevariety, shape=BOX, kmax=3, star=tropical_line)
    assert bounds.upper == 2
    assert any("star leading coefficient" in line for line in bounds.evidence)
    assert 0 <= bounds.lower <= 2


def test_degree_bounds_preconditions(anti_diagonal):
    with pytest.raises(PreconditionError):
        degree_bounds(anti_diagonal, kmax=1)
    with pytest.raises(PreconditionError):
        degree_bounds(Prevariety.from_polyhedra([Polyhedron.box([0, 0], [1, 1])]))


def test_degree_bounds_are_ordered():
    with pytest.raises(InvariantViolation):
        DegreeBounds(Fraction(2), Fraction(1))


def test_halving_coefficients_attain_every_slope():
    result = concave_slopes([8, 4, 2, 1])
    assert result.t == 3
    assert result.attained == (0, 1, 2, 3)
    assert result.breakpoints == (4, 2, 1)
    assert result.threshold == 0
    assert result.verified


def test_slopes_stop_at_the_first_non_halving_step():
    result = concave_slopes([8, 4, 3])
    assert result.t == 1
    assert result.breakpoints == (4,)
    assert result.threshold == 1
    assert result.verified


def test_infinite_coefficients_beyond_t():
    result = concave_slopes([4, 2, INFINITY, 1])
    assert result.t == 1
    assert result.threshold == Fraction(1, 2)
    assert result.verified


def test_non_positive_coefficient_is_reported():
    result = concave_slopes([4, 0])
    assert not result.verified
    assert result.failing_index == 1


def test_concave_slopes_of_a_restriction():
    result = concave_slopes(UnivariateRestriction.from_coefficients([4, 2, 1]))
    assert result.t == 2
    assert result.verified
    with pytest.raises(PreconditionError):
        concave_slopes([])


def test_random_halving_sequences_attain_every_slope():
    rng = random.Random(11)
    for _ in range(100):
        t = rng.randint(0, 6)
        a = [rng.randint(1, 5)]
        for _ in range(t):
            a.insert(0, 2 * a[0] + rng.randint(0, 3))
        result = concave_slopes(a)
        assert result.t == t
        assert result.attained == tuple(range(t + 1))
        assert result.verified
