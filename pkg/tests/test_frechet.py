import os, sys
sys.path.append(os.path.dirname(os.path.dirname(__file__)))

import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings
from hypothesis import strategies as st

from sqrtx_pkg.errors import DimensionMismatch, OrderTooLarge
from sqrtx_pkg.frechet import (
    catalan,
    catalan_table,
    derivative_norm_bound,
    derivative_stack,
    frechet_first,
    frechet_second_bidirectional,
    principal_sqrt,
    scaled_term_bound,
    sylvester_residual,
    sylvester_sqrt_solve,
)
from sqrtx_pkg.linalg import NormKind, SymMatrix, assert_spd, norm
from sqrtx_pkg.oracles.scalar import half_binomial, scalar_closed_form
from sqrtx_pkg.suite import random_direction, random_spd, random_symmetric, scalar_saturation_error


def spd(*values):
    return assert_spd(SymMatrix.diag(values))


def test_principal_sqrt_diagonal():
    np.testing.assert_array_equal(principal_sqrt(spd(4, 9)).entries, np.diag([2.0, 3.0]))
    np.testing.assert_array_equal(principal_sqrt(spd(1, 1, 1)).entries, np.eye(3))


def test_principal_sqrt_squares_back():
    a = assert_spd(SymMatrix([[2, 1], [1, 2]]))
    s = principal_sqrt(a)
    np.testing.assert_allclose(s.entries @ s.entries, a.entries, atol=1e-12)
    assert s.lambda_min == pytest.approx(1.0)


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(1, 8))
def test_principal_sqrt_matches_scipy(seed, dim):
    a = random_spd(np.random.default_rng(seed), dim)
    np.testing.assert_allclose(principal_sqrt(a).entries, scipy.linalg.sqrtm(a.entries).real, atol=1e-9)


def test_sylvester_examples():
    h = random_symmetric(np.random.default_rng(0), 3)
    np.testing.assert_allclose(sylvester_sqrt_solve(spd(2, 2, 2), h).entries, h.entries / 4, atol=1e-15)
    x = sylvester_sqrt_solve(spd(1, 2), SymMatrix([[0, 1], [1, 0]]))
    np.testing.assert_allclose(x.entries, [[0, 1 / 3], [1 / 3, 0]], atol=1e-15)


def test_sylvester_random_residual():
    rng = np.random.default_rng(10)
    s = random_spd(rng, 10)
    h = random_symmetric(rng, 10)
    x = sylvester_sqrt_solve(s, h)
    assert sylvester_residual(s, x, h) <= 1e-10
    np.testing.assert_allclose(x.entries, scipy.linalg.solve_sylvester(s.entries, s.entries, h.entries), atol=1e-10)


def test_sylvester_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        sylvester_sqrt_solve(spd(1, 2), SymMatrix.identity(3))


def test_frechet_first_examples():
    h = random_symmetric(np.random.default_rng(1), 4)
    np.testing.assert_allclose(frechet_first(spd(1, 1, 1, 1), h).entries, h.entries / 2, atol=1e-15)
    np.testing.assert_allclose(frechet_first(spd(4, 4, 4, 4), h).entries, h.entries / 4, atol=1e-15)
    assert frechet_first(spd(9), SymMatrix([[1.0]])).entries[0, 0] == pytest.approx(1 / 6, rel=1e-15)


def test_scalar_stack_matches_closed_form():
    a, h = 2.5, 0.7
    stack = derivative_stack(spd(a), SymMatrix([[h]]), 10)
    for k in range(1, 11):
        assert stack.term(k).entries[0, 0] == pytest.approx(scalar_closed_form(a, h, k), rel=1e-12)
    assert stack.term(2).entries[0, 0] == pytest.approx(-h ** 2 / (8 * a ** 1.5), rel=1e-12)
    assert stack.term(3).entries[0, 0] == pytest.approx(h ** 3 / (16 * a ** 2.5), rel=1e-12)


def test_commuting_stack_reduces_to_scalar():
    stack = derivative_stack(spd(1, 1, 1), SymMatrix.identity(3), 6)
    for k in range(1, 7):
        np.testing.assert_allclose(stack.term(k).entries, half_binomial(k) * np.eye(3), atol=1e-15)


def test_stack_invariants():
    rng = np.random.default_rng(5)
    a = random_spd(rng, 5)
    h = random_symmetric(rng, 5)
    stack = derivative_stack(a, h, 4)
    assert stack.order == 4
    np.testing.assert_allclose(stack.term(1).entries, frechet_first(a, h).entries, atol=1e-14)
    for k in range(1, 5):
        term = stack.term(k).entries
        np.testing.assert_array_equal(term, term.T)
        np.testing.assert_allclose(stack.derivative(k).entries, math.factorial(k) * term)
    with pytest.raises(IndexError):
        stack.term(5)


def test_second_derivative_two_routes():
    rng = np.random.default_rng(6)
    a = random_spd(rng, 5, 0.5, 5.0)
    h = random_symmetric(rng, 5)
    s1 = frechet_first(a, h)
    closed = sylvester_sqrt_solve(principal_sqrt(a), SymMatrix(s1 @ s1)) * -2.0
    np.testing.assert_allclose(derivative_stack(a, h, 2).derivative(2).entries, closed.entries, atol=1e-12)


def test_polarization():
    rng = np.random.default_rng(7)
    a = random_spd(rng, 4, 0.5, 5.0)
    h1, h2 = random_symmetric(rng, 4), random_symmetric(rng, 4)
    diagonal = frechet_second_bidirectional(a, h1, h1)
    np.testing.assert_allclose(diagonal.entries, derivative_stack(a, h1, 2).derivative(2).entries, atol=1e-12)
    np.testing.assert_array_equal(frechet_second_bidirectional(a, h1, SymMatrix.zeros(4)).entries, np.zeros((4, 4)))
    np.testing.assert_allclose(
        frechet_second_bidirectional(a, h1, h2).entries,
        frechet_second_bidirectional(a, h2, h1).entries,
        atol=1e-14,
    )


def test_order_cap():
    with pytest.raises(OrderTooLarge):
        derivative_stack(spd(1), SymMatrix([[1.0]]), 31)
    with pytest.raises(OrderTooLarge):
        derivative_stack(spd(1), SymMatrix([[1.0]]), 0)


def test_catalan_numbers():
    expected = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796]
    assert list(catalan_table(10).values) == expected
    assert [catalan(n) for n in range(11)] == expected
    assert catalan_table(30)[30] == math.comb(60, 30) // 31


def test_derivative_norm_bound_examples():
    assert derivative_norm_bound(0, 1.0, 1.0) == 0.5
    assert derivative_norm_bound(1, 1.0, 1.0) == 0.25
    assert derivative_norm_bound(2, 1.0, 1.0) == 0.375
    with pytest.raises(ValueError):
        derivative_norm_bound(1, 0.0, 1.0)


@pytest.mark.parametrize("n", range(0, 11))
def test_scalar_saturation(n):
    for a in (0.1, 1.0, 7.3):
        assert scalar_saturation_error(a, 0.4, n) <= 1e-12


def test_scaled_term_bound_dominates():
    rng = np.random.default_rng(12)
    a = random_spd(rng, 6)
    h = random_direction(rng, a, 0.8)
    stack = derivative_stack(a, h, 6)
    for kind in NormKind:
        k_const = kind.constant(a.dim)
        for k in range(1, 7):
            bound = scaled_term_bound(k, a.lambda_min, k_const, norm(h, kind))
            assert norm(stack.term(k), kind) <= bound * (1 + 1e-10)
            assert bound == pytest.approx(
                derivative_norm_bound(k - 1, a.lambda_min, k_const) * norm(h, kind) ** k / math.factorial(k)
            )


def test_polarization_bilinear():
    rng = np.random.default_rng(17)
    a = random_spd(rng, 5, 0.5, 5.0)
    h1, h2, h3 = (random_symmetric(rng, 5) for _ in range(3))
    split = frechet_second_bidirectional(a, h1 + h2, h3)
    summed = frechet_second_bidirectional(a, h1, h3) + frechet_second_bidirectional(a, h2, h3)
    np.testing.assert_allclose(split.entries, summed.entries, atol=1e-10)
    scaled = frechet_second_bidirectional(a, h1 * 2.5, h3)
    np.testing.assert_allclose(scaled.entries, 2.5 * frechet_second_bidirectional(a, h1, h3).entries, atol=1e-10)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(1, 20))
def test_sylvester_residual_random_sizes(seed, dim):
    rng = np.random.default_rng(seed)
    s = random_spd(rng, dim)
    h = random_symmetric(rng, dim)
    assert sylvester_residual(s, sylvester_sqrt_solve(s, h), h) <= 1e-10
