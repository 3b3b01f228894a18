"""
Matching and Tropical Rank Test Suite

Test Coverage:
- Evaluation matrices built from polynomials and points
- Minimum matchings: optimum, uniqueness, gap, infinitesimal entries
- Hungarian path agrees with permutation enumeration
- Tropical rank and its budget
- Dual potentials for a unique identity matching (fixed and seeded random
  matrices)
- Agreement with the brute-force reference (hypothesis)

Usage:
    pytest tests/test_matching.py -v
"""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropdeg.algebra.polynomials import Monomial, Point, TropPoly
from tropdeg.algebra.scalars import INFINITY, PerturbedScalar
from tropdeg.errors import (
    DimensionMismatchError,
    NoFiniteMatchingError,
    PreconditionError,
    RankBudgetExceededError,
)
from tropdeg.independence import (
    EvalMatrix,
    brute_matching,
    brute_max_independent,
    brute_rank,
    build_eval_matrix,
    dual_potentials,
    is_trop_nonsingular,
    min_matching,
    tropical_rank,
)
from tropdeg.independence.oracle import random_matrix
from tropdeg.independence.potentials import SOURCE, constraint_graph
from tropdeg.settings import reset_settings_cache

square_matrices = st.integers(min_value=1, max_value=4).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(min_value=-3, max_value=3), min_size=n, max_size=n),
        min_size=n,
        max_size=n,
    )
)


@pytest.fixture
def hungarian_only(monkeypatch):
    monkeypatch.setenv("TROPDEG_MATCHING_ENUMERATION", "1")
    reset_settings_cache()


def test_build_eval_matrix():
    fs = [TropPoly.monomial((1, 0)), TropPoly.monomial((0, 1))]
    A = build_eval_matrix(fs, [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(2))])
    assert A.shape == (2, 2)
    assert A.entries == ((0, 1), (0, 2))
    with pytest.raises(DimensionMismatchError):
        build_eval_matrix(fs, [(Fraction(1),)])


def test_eval_matrix_must_be_rectangular():
    with pytest.raises(ValueError):
        EvalMatrix.of([[0, 1], [2]])


def test_identity_is_the_unique_optimum():
    result = min_matching(EvalMatrix.of([[0, 1], [1, 0]]))
    assert result.permutation == (0, 1)
    assert result.value == 0
    assert result.unique
    assert result.gap == 2


def test_constant_matrix_is_singular():
    result = min_matching(EvalMatrix.of([[0, 0], [0, 0]]))
    assert not result.unique
    assert result.gap == 0
    assert not is_trop_nonsingular(EvalMatrix.of([[0, 0], [0, 0]]))


def test_single_entry_has_infinite_gap():
    result = min_matching(EvalMatrix.of([["3/2"]]))
    assert result.value == Fraction(3, 2)
    assert result.unique
    assert not result.gap.is_finite


def test_infinitesimal_entries_decide_the_optimum():
    eta = PerturbedScalar.eta(1)
    result = min_matching(EvalMatrix.of([[eta, 0], [0, eta]]))
    assert result.permutation == (1, 0)
    assert result.value == 0
    assert result.gap == eta + eta
    assert result.unique


def test_infinite_entries_are_forbidden():
    result = min_matching(EvalMatrix.of([[INFINITY, 5], [0, INFINITY]]))
    assert result.permutation == (1, 0)
    assert result.value == 5
    assert not result.gap.is_finite
    with pytest.raises(NoFiniteMatchingError):
        min_matching(EvalMatrix.of([[INFINITY, INFINITY], [0, 0]]))


def test_min_matching_needs_a_square_matrix():
    with pytest.raises(PreconditionError):
        min_matching(EvalMatrix.of([[0, 1, 2], [1, 0, 2]]))


def test_hungarian_agrees_with_enumeration(hungarian_only):
    rng = random.Random(7)
    for _ in range(40):
        A = random_matrix(rng, rng.randint(2, 5), low=-2, high=2)
        best, count = brute_matching(A)
        result = min_matching(A)
        assert result.value == best
        assert result.unique == (count == 1)


def test_hungarian_skips_forbidden_entries(hungarian_only):
    result = min_matching(EvalMatrix.of([[INFINITY, 1, 4], [2, INFINITY, 0], [0, 3, INFINITY]]))
    assert result.value == 1
    assert result.permutation == (1, 2, 0)


def test_tropical_rank():
    assert tropical_rank(EvalMatrix.of([[0, 1], [1, 0]])) == 2
    assert tropical_rank(EvalMatrix.of([[0, 0], [0, 0]])) == 1
    assert tropical_rank(EvalMatrix.of([[0, 0, 0], [0, 0, 0], [0, 1, 2]])) == 2
    assert tropical_rank(EvalMatrix.of([[0, 0, 0], [0, 1, 2], [0, 2, 4]])) == 3


def test_tropical_rank_budget():
    with pytest.raises(RankBudgetExceededError):
        tropical_rank(EvalMatrix.of([[0, 1], [1, 0]]), bound=1)


def test_dual_potentials_make_the_diagonal_strict():
    A = EvalMatrix.of([[0, 1, 3], [2, 0, 1], [1, 1, 0]])
    w = dual_potentials(A)
    for i in range(3):
        for l in range(3):
            if l != i:
                assert A[i, i] + w[i] < A[l, i] + w[l]


def test_dual_potentials_need_the_identity():
    with pytest.raises(PreconditionError):
        dual_potentials(EvalMatrix.of([[1, 0], [0, 1]]))
    with pytest.raises(PreconditionError):
        dual_potentials(EvalMatrix.of([[0, 0], [0, 0]]))


def test_brute_max_independent_on_points():
    monomials = [Monomial((0,)), Monomial((1,)), Monomial((2,))]
    points = [Point.of([0]), Point.of([1])]
    assert brute_max_independent(monomials, points) == 2
    assert brute_max_independent(monomials, points[:1]) == 1


@settings(max_examples=150, deadline=None)
@given(square_matrices)
def test_min_matching_agrees_with_brute_force(rows):
    A = EvalMatrix.of(rows)
    best, count = brute_matching(A)
    result = min_matching(A)
    assert result.value == best
    assert result.unique == (count == 1)
    assert A.matching_value(result.permutation) == result.value


@settings(max_examples=60, deadline=None)
@given(square_matrices)
def test_tropical_rank_agrees_with_brute_force(rows):
    A = EvalMatrix.of(rows)
    assert tropical_rank(A) == brute_rank(A)


@pytest.mark.parametrize("seed", range(100))
def test_dual_potentials_on_random_unique_matchings(seed):
    rng = random.Random(seed)
    A = random_matrix(rng, rng.randint(1, 5))
    result = min_matching(A)
    if not result.unique:
        pytest.skip("optimal matching is not unique")
    B = A.permute_columns(result.permutation)
    w = dual_potentials(B)
    size = B.shape[0]
    for i in range(size):
        for l in range(size):
            if l != i:
                assert B[i, i] + w[i] < B[l, i] + w[l]


def test_constraint_graph_has_a_virtual_source():
    A = EvalMatrix.of([[0, 1, 3], [2, 0, INFINITY], [1, 1, 0]])
    graph = constraint_graph(A, PerturbedScalar.of(Fraction(1, 4)))
    assert graph.number_of_nodes() == 4
    assert sorted(graph.successors(SOURCE)) == [0, 1, 2]
    assert not graph.has_edge(1, 2)
    assert graph[0][1]["weight"] == PerturbedScalar.of(Fraction(3, 4))
