"""
Newton Lift and Refinement Test Suite

Test Coverage:
- Newton-lift graphs of verified certificates (components, edges)
- Supporting-plane checks for lift edges
- Refinement: epsilon from the envelope slack, subdivided coefficients,
  size targets, the r = 1 shortcut and invalid factors
- Halving budget exhaustion
- Subdivided coefficients strictly convex along each lift edge
- Every bundled certificate refines for r = 2, 3 with the component and
  edge checks passing

Usage:
    pytest tests/test_refinement.py -v
"""

import json
from fractions import Fraction

import pytest

from tropdeg.algebra.polynomials import Monomial, Point, TropPoly
from tropdeg.algebra.scalars import PerturbedScalar
from tropdeg.cli import parse_model
from tropdeg.degree import build_newton_lift, lower_hull_edge_check, refine_certificate, run_refinement
from tropdeg.degree import refinement as refinement_module
from tropdeg.errors import PreconditionError, RefinementBudgetExceededError
from tropdeg.independence import Certificate, parse_certificate, verify_certificate

from conftest import MODELS_DIR


def load_certificate(name):
    return parse_certificate(json.loads((MODELS_DIR / "certificates" / name).read_text()))


def model_certificate(name):
    return parse_certificate(json.loads((MODELS_DIR / name).read_text())["certificate"])


@pytest.fixture
def diagonal_certificate():
    # min(1, x + y): each member strict on one side of (1/2, 1/2)
    return load_certificate("diagonal_two.json")


def test_newton_lift_of_the_diagonal(diagonal_certificate, diagonal):
    lift = build_newton_lift(diagonal_certificate, diagonal)
    assert lift.edges == [(0, 1)]
    assert lift.components == 1
    assert not lift.perturbed
    assert lift.branch_count == 1
    assert all(check.supported for check in lower_hull_edge_check(lift))


def test_newton_lift_of_the_tropical_line(tropical_line_prevariety):
    cert = load_certificate("tropical_line_three.json")
    lift = build_newton_lift(cert, tropical_line_prevariety)
    assert lift.edges == [(0, 1), (1, 2)]
    assert lift.components == 1
    assert lift.components <= tropical_line_prevariety.branch_count
    checks = lower_hull_edge_check(lift)
    assert [c.edge for c in checks] == [(0, 1), (1, 2)]
    assert all(c.supported for c in checks)


def test_newton_lift_preconditions(diagonal_certificate, two_points, anti_diagonal):
    with pytest.raises(PreconditionError):
        build_newton_lift(diagonal_certificate, two_points)
    with pytest.raises(PreconditionError, match="does not verify"):
        build_newton_lift(load_certificate("tampered.json"), anti_diagonal)


def test_refinement_of_the_diagonal(diagonal_certificate, diagonal):
    refined, params = run_refinement(diagonal_certificate, diagonal, 2)
    assert params.r == 2
    assert params.epsilon == Fraction(1, 16)
    assert params.attempts == 1
    assert not params.envelope_witnesses
    assert refined.size == 3
    middle = {f.terms[0][0]: b for f, b in refined.members}[Monomial((1, 1))]
    assert middle == 1 - Fraction(1, 16)
    assert verify_certificate(refined, diagonal)


def test_refinement_reaches_the_size_target(anti_diagonal, cross_lines):
    refined = refine_certificate(load_certificate("anti_diagonal_three.json"), anti_diagonal, 2)
    assert refined.size >= (3 - 1) * 2
    assert verify_certificate(refined, anti_diagonal)

    cert = model_certificate("cross_lines.json")
    refined = refine_certificate(cert, cross_lines, 3)
    assert refined.size >= (4 - cross_lines.branch_count) * 3
    assert verify_certificate(refined, cross_lines)


def test_refined_exponents_are_scaled(diagonal_certificate, diagonal):
    refined = refine_certificate(diagonal_certificate, diagonal, 3)
    exponents = sorted(f.terms[0][0].exponents for f, _ in refined.members)
    assert exponents == [(0, 0), (1, 1), (2, 2), (3, 3)]


def test_factor_one_is_the_identity(diagonal_certificate, diagonal):
    assert run_refinement(diagonal_certificate, diagonal, 1) == (diagonal_certificate, None)
    with pytest.raises(PreconditionError):
        run_refinement(diagonal_certificate, diagonal, 0)


def test_perturbed_coefficients_are_rejected(diagonal):
    cert = Certificate(
        (
            (TropPoly.monomial((0, 0)), PerturbedScalar.of(1) + PerturbedScalar.eta(1)),
            (TropPoly.monomial((1, 1)), PerturbedScalar.of(0)),
        ),
        ((Point.of([1, 1]), 0), (Point.of([0, 0]), 1)),
    )
    with pytest.raises(PreconditionError):
        run_refinement(cert, diagonal, 2)


def test_halving_budget(diagonal_certificate, diagonal, monkeypatch):
    monkeypatch.setattr(refinement_module, "_attempt", lambda *args: (None, (), False))
    with pytest.raises(RefinementBudgetExceededError) as excinfo:
        run_refinement(diagonal_certificate, diagonal, 2)
    assert excinfo.value.last_epsilon is not None
    assert excinfo.value.last_epsilon < Fraction(1, 16)


BUNDLED_CERTIFICATES = [
    ("anti_diagonal_three.json", "anti_diagonal_segment.json"),
    ("diagonal_two.json", "diagonal_segment.json"),
    ("tropical_line_three.json", "tropical_line_star.json"),
    ("offset_star_three.json", "offset_star.json"),
    ("disjoint_segments_four.json", "disjoint_segments.json"),
]


@pytest.mark.parametrize("certificate, model_name", BUNDLED_CERTIFICATES)
@pytest.mark.parametrize("r", [2, 3])
def test_bundled_certificates_refine(certificate, model_name, r):
    V = parse_model(MODELS_DIR / model_name).prevariety()
    cert = load_certificate(certificate)
    assert cert.size <= 4
    lift = build_newton_lift(cert, V)
    assert lift.components <= V.branch_count
    assert all(check.supported for check in lower_hull_edge_check(lift))
    refined = refine_certificate(cert, V, r)
    assert refined.size >= (cert.size - V.branch_count) * r
    assert verify_certificate(refined, V).ok


def test_new_bundled_certificates_have_the_expected_lifts():
    star = parse_model(MODELS_DIR / "offset_star.json").prevariety()
    lift = build_newton_lift(load_certificate("offset_star_three.json"), star)
    assert star.branch_count == 3
    assert lift.edges == [(0, 1), (1, 2)]

    segments = parse_model(MODELS_DIR / "disjoint_segments.json").prevariety()
    lift = build_newton_lift(load_certificate("disjoint_segments_four.json"), segments)
    assert segments.branch_count == 2
    assert lift.edges == [(0, 1), (2, 3)]
    assert lift.components == 2


def test_subdivided_coefficients_sit_below_the_chord(anti_diagonal):
    cert = load_certificate("anti_diagonal_three.json")
    r = 3
    refined, params = run_refinement(cert, anti_diagonal, r)
    original = [(f.terms[0][0], (f.terms[0][1] + b).real) for f, b in cert.members]
    coefficient = {f.terms[0][0].exponents: (f.terms[0][1] + b).real for f, b in refined.members}
    assert params.subdivision
    for (i, j), p, _ in params.subdivision:
        (a_i, c_i), (a_j, c_j) = original[i], original[j]
        chain = []
        for q in range(r + 1):
            e = tuple((r - q) * x + q * y for x, y in zip(a_i.exponents, a_j.exponents))
            chain.append(coefficient[e])
        chord = (r - p) * c_i + p * c_j
        assert chain[p] == chord - params.epsilon * p * (r - p)
        assert chain[p] < chord
        assert all(chain[q - 1] - 2 * chain[q] + chain[q + 1] > 0 for q in range(1, r))
