"""
Star Recursion Test Suite

Test Coverage:
- Leading coefficient B, construction constant C and defect D
- Lattice-point recursion sizes and the resulting certificates
- Axis reflections and apex translation
- Search-based upper check and the per-k sweep
- Random stars: recursion sizes against kB - D, search values against kB + 1

Usage:
    pytest tests/test_star.py -v
"""

import random
from math import gcd

import pytest

from tropdeg.algebra.polynomials import Point
from tropdeg.degree import (
    star_B,
    star_constant,
    star_defect,
    star_lower_construct,
    star_sweep,
    star_upper_check,
)
from tropdeg.errors import PreconditionError
from tropdeg.geometry.prevariety import Star, star_to_prevariety
from tropdeg.independence import verify_certificate

from scripts.run_star_sweep import random_star, sweep_frame


@pytest.fixture
def axes_star():
    return Star(Point.of([0, 0]), ((1, 0), (-1, 0), (0, 1), (0, -1)))


@pytest.fixture
def opposite_rays():
    return Star(Point.of([0, 0]), ((1, 0), (-1, 0)))


def test_tropical_line_constants(tropical_line):
    assert star_B(tropical_line) == 2
    assert star_constant(tropical_line) == 2
    assert star_defect([(-1, -1)], 2) == 8


def test_axes_star_constants(axes_star):
    assert star_B(axes_star) == 2
    assert star_constant(axes_star) == 2
    construction, _ = star_lower_construct(axes_star, 3)
    assert construction.D == 4
    assert construction.negative == ((-1, 0), (0, -1))


@pytest.mark.parametrize("k, size", [(5, 7), (6, 9), (7, 11), (8, 13)])
def test_tropical_line_recursion(tropical_line, k, size):
    construction, cert = star_lower_construct(tropical_line, k)
    assert len(construction.W) == size
    assert len(construction.W) >= construction.lower_target
    assert cert.size == size
    assert verify_certificate(cert, star_to_prevariety(tropical_line))


def test_opposite_rays(opposite_rays):
    construction, cert = star_lower_construct(opposite_rays, 4)
    assert construction.D == 1
    assert len(construction.W) == 4
    assert verify_certificate(cert)


def test_reflected_axes_are_restored():
    S = Star(Point.of([0, 0]), ((1, 1), (1, 0), (0, 1)))
    construction, cert = star_lower_construct(S, 5)
    assert construction.reflected == (True, True)
    assert all(d[0] <= 0 and d[1] <= 0 for d in construction.negative)
    assert verify_certificate(cert, star_to_prevariety(S))


def test_translated_apex(tropical_line):
    moved = Star(Point.of([1, "1/2"]), tropical_line.directions)
    _, cert = star_lower_construct(moved, 5)
    assert verify_certificate(cert, star_to_prevariety(moved))


def test_construction_threshold(tropical_line):
    with pytest.raises(PreconditionError, match="k below construction threshold"):
        star_lower_construct(tropical_line, 2)


def test_recursion_is_planar():
    with pytest.raises(PreconditionError):
        star_constant(Star(Point.of([0, 0, 0]), ((1, 0, 0), (0, -1, 0))))


def test_upper_check_respects_the_leading_coefficient(tropical_line):
    report = star_upper_check(tropical_line, 2)
    assert report.B == 2
    assert report.bound == 5
    assert 1 <= report.search_value <= report.bound


def test_sweep_realizes_the_slope(tropical_line):
    sweep = star_sweep(tropical_line, [5, 6, 7, 8], workers=2)
    assert [row.k for row in sweep.rows] == [5, 6, 7, 8]
    assert [row.W for row in sweep.rows] == [7, 9, 11, 13]
    assert all(row.upper == 2 * row.k + 1 for row in sweep.rows)
    assert sweep.slope_realized


def test_short_sweep_does_not_claim_the_slope(tropical_line):
    assert not star_sweep(tropical_line, [5]).slope_realized


def test_random_stars_are_primitive():
    rng = random.Random(4)
    for _ in range(5):
        star = random_star(rng, 3, 2)
        assert len(set(star.directions)) == len(star.directions)
        assert all(gcd(*d) == 1 for d in star.directions)


def test_sweep_frame(tropical_line):
    frame = sweep_frame([tropical_line], 2, 1)
    assert list(frame["k"]) == [3, 4]
    assert (frame["W"] >= frame["kB-D"]).all()
    assert list(frame["kB+1"]) == [7, 9]


@pytest.mark.parametrize("seed", range(10))
def test_random_star_recursion_meets_the_lower_target(seed):
    star = random_star(random.Random(seed), 3, 2)
    C = star_constant(star)
    V = star_to_prevariety(star)
    for k in range(C + 1, C + 16):
        construction, cert = star_lower_construct(star, k)
        assert len(construction.W) >= k * construction.B - construction.D
        assert cert.size == len(construction.W)
        assert verify_certificate(cert, V)


@pytest.mark.parametrize("seed", range(5))
def test_tiny_star_search_stays_below_the_leading_term(seed):
    star = random_star(random.Random(100 + seed), 3, 1)
    B = star_B(star)
    for k in (1, 2, 3):
        report = star_upper_check(star, k)
        assert 1 <= report.search_value <= k * B + 1
        assert report.search_value <= report.class_upper
