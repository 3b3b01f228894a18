"""
Pytest Configuration and Shared Fixtures

Puts the project root on ``sys.path``, isolates the cached settings between
tests and provides the small prevarieties most test modules work on.

Features:
- Project root import path
- Settings cache reset around every test (budgets can be patched per test)
- Fixtures: diagonal and anti-diagonal lines, the tropical line star,
  the cross of both diagonals, a two-point set

Usage:
    # Automatically loaded by pytest
    pytest tests/

    # Run one module
    pytest tests/test_matching.py -v
"""

import logging
import sys
from pathlib import Path

import pytest

PROJECT_ROOT = Path(__file__).resolve().parents[1]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from tropdeg.algebra.polynomials import Point
from tropdeg.geometry.prevariety import Prevariety, Segment, Star, star_to_prevariety
from tropdeg.settings import reset_settings_cache

MODELS_DIR = PROJECT_ROOT / "models"


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    monkeypatch.delenv("TROPDEG_CONFIG", raising=False)
    reset_settings_cache()
    yield
    reset_settings_cache()


@pytest.fixture(autouse=True)
def restore_package_logger():
    # the CLI installs handlers and turns propagation off; caplog needs it on
    package_logger = logging.getLogger("tropdeg")
    state = (package_logger.level, list(package_logger.handlers), package_logger.propagate)
    yield
    package_logger.setLevel(state[0])
    package_logger.handlers[:] = state[1]
    package_logger.propagate = state[2]


@pytest.fixture
def diagonal():
    return Prevariety.from_segments([Segment(Point.of([0, 0]), (1, 1))])


@pytest.fixture
def anti_diagonal():
    return Prevariety.from_segments([Segment(Point.of([0, 0]), (1, -1))])


@pytest.fixture
def cross_lines():
    return Prevariety.from_segments([Segment(Point.of([0, 0]), (1, 1)), Segment(Point.of([0, 0]), (1, -1))])


@pytest.fixture
def tropical_line():
    return Star(Point.of([0, 0]), ((1, 0), (0, 1), (-1, -1)))


@pytest.fixture
def tropical_line_prevariety(tropical_line):
    return star_to_prevariety(tropical_line)


@pytest.fixture
def two_points():
    return Prevariety.from_points([Point.of([0, 0]), Point.of([1, "1/2"])])
