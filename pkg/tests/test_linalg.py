import os, sys
sys.path.append(os.path.dirname(os.path.dirname(__file__)))

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sqrtx_pkg.errors import AsymmetricMatrix, EigenNotConverged, NonFiniteMatrix, NotPositiveDefinite
from sqrtx_pkg.linalg import (
    EPS,
    NormKind,
    SymMatrix,
    assert_spd,
    eig_sym,
    is_spd,
    lambda_min,
    norm,
    symmetrize,
)
from sqrtx_pkg.suite import random_direction, random_spd, random_symmetric
from sqrtx_pkg.taylor import segment_lambda_floor


def test_symmetrize_keeps_symmetric_input():
    m = symmetrize([[1, 2], [2, 1]])
    np.testing.assert_array_equal(m.entries, [[1, 2], [2, 1]])
    assert m.asymmetry == 0.0


def test_symmetrize_averages_small_drift():
    m = symmetrize([[1, 2 + 1e-13], [2, 1]])
    np.testing.assert_allclose(m.entries, [[1, 2], [2, 1]], atol=1e-13)
    assert m.entries[0, 1] == m.entries[1, 0]


def test_symmetrize_rejects_asymmetric():
    with pytest.raises(AsymmetricMatrix):
        symmetrize([[0, 1], [0, 0]])


def test_sym_matrix_is_read_only():
    m = SymMatrix.identity(2)
    with pytest.raises(ValueError):
        m.entries[0, 0] = 5.0


def test_eig_identity():
    eig = eig_sym(SymMatrix.identity(3))
    np.testing.assert_array_equal(eig.eigenvalues, [1, 1, 1])
    np.testing.assert_array_equal(eig.basis, np.eye(3))


def test_eig_diagonal_sorted():
    eig = eig_sym(SymMatrix.diag([9, 4]))
    np.testing.assert_array_equal(eig.eigenvalues, [4, 9])
    np.testing.assert_array_equal(np.abs(eig.basis), [[0, 1], [1, 0]])


def test_eig_random_8x8_self_certifies():
    a = random_symmetric(np.random.default_rng(8), 8)
    eig = a.eigen
    scale = norm(a, NormKind.FROBENIUS)
    assert eig.residual(a) <= 1e-12 * scale
    assert eig.orthogonality_error() <= 1e-12
    assert np.all(np.diff(eig.eigenvalues) >= 0)


def test_eig_sweep_cap():
    a = random_symmetric(np.random.default_rng(3), 6)
    with pytest.raises(EigenNotConverged):
        eig_sym(a, max_sweeps=1)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(1, 8))
def test_eig_matches_numpy(seed, dim):
    a = random_symmetric(np.random.default_rng(seed), dim)
    expected = np.linalg.eigvalsh(a.entries)
    np.testing.assert_allclose(a.eigen.eigenvalues, expected, atol=1e-12 * max(1.0, np.abs(expected).max()))


def test_norms():
    m = SymMatrix.diag([3, -4])
    assert norm(m, NormKind.SPECTRAL) == 4
    assert norm(m, NormKind.FROBENIUS) == 5
    assert norm(SymMatrix.identity(7), "frobenius") == pytest.approx(np.sqrt(7))


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), dim=st.integers(1, 8))
def test_norm_equivalence(seed, dim):
    m = random_symmetric(np.random.default_rng(seed), dim)
    spectral = norm(m, NormKind.SPECTRAL)
    frobenius = norm(m, NormKind.FROBENIUS)
    assert spectral <= frobenius * (1 + 1e-12)
    assert frobenius <= np.sqrt(dim) * spectral * (1 + 1e-12)


def test_lambda_min():
    assert lambda_min(SymMatrix.diag([2, 5])) == 2
    assert lambda_min(SymMatrix.identity(4)) == 1


def test_assert_spd():
    spd = assert_spd(SymMatrix.diag([1, 2]))
    assert spd.lambda_min == 1
    for bad in ([1, 0], [1, -1]):
        with pytest.raises(NotPositiveDefinite) as exc:
            assert_spd(SymMatrix.diag(bad))
        assert exc.value.lambda_min == min(bad)
        assert not is_spd(SymMatrix.diag(bad))


def test_segment_lambda_floor():
    rng = np.random.default_rng(11)
    a = random_spd(rng, 5, 1.0, 4.0)
    h = random_direction(rng, a, 0.9)
    for eps in np.linspace(0.0, 1.0, 11):
        floor = segment_lambda_floor(a, eps)
        assert lambda_min(a.base + h * eps) >= floor - 1e-12
    with pytest.raises(ValueError):
        segment_lambda_floor(a, 1.5)


@pytest.mark.parametrize("bad", [np.nan, np.inf, -np.inf])
def test_symmetrize_rejects_non_finite(bad):
    with pytest.raises(NonFiniteMatrix) as exc:
        symmetrize([[bad, 0], [0, 1]])
    assert exc.value.count == 1


@pytest.mark.parametrize("bad", [np.nan, np.inf])
def test_eig_rejects_non_finite(bad):
    with pytest.raises(EigenNotConverged):
        eig_sym(SymMatrix([[bad, 0.0], [0.0, 1.0]]))


@pytest.mark.parametrize("dim", [10, 20, 35, 50])
def test_eig_invariants_large(dim):
    a = random_symmetric(np.random.default_rng(dim), dim)
    eig = a.eigen
    assert eig.residual(a) <= 100 * dim * EPS * norm(a, NormKind.FROBENIUS)
    assert eig.orthogonality_error() <= 10 * dim * EPS
