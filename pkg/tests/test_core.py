"""Matrix layer: Hermitian container, products, commutators."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zenosim.core import (
    DimensionMismatchError,
    HermitianMatrix,
    SpectralData,
    ValidationError,
    as_matrix,
    commutator,
    matmul,
)

H2 = np.array([[-0.2, 0.2], [0.2, 0.2]])


def random_density(rng, dim):
    # rho = A A^H / tr, always a valid density matrix
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = a @ a.conj().T
    return m / np.real(np.trace(m))


def test_matmul_against_triple_loop():
    """matmul agrees with the schoolbook triple loop on random 5x5 input."""
    rng = np.random.default_rng(7)
    a = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    b = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    want = np.zeros((5, 5), dtype=np.complex128)
    for i in range(5):
        for j in range(5):
            for k in range(5):
                want[i, j] += a[i, k] * b[k, j]
    np.testing.assert_allclose(matmul(a, b), want, atol=1e-13)


def test_matmul_shape_mismatch():
    with pytest.raises(DimensionMismatchError):
        matmul(np.eye(2), np.eye(3))


def test_two_level_hamiltonian_squares_to_scalar():
    # eps0 = -eps1 and |eps| = v makes H^2 proportional to the identity
    np.testing.assert_allclose(matmul(H2, H2), 0.08 * np.eye(2), atol=1e-15)


def test_commutator_initial_state():
    rho = HermitianMatrix.basis_state(2, 0)
    want = np.array([[0.0, -0.2], [0.2, 0.0]])
    np.testing.assert_allclose(commutator(H2, rho), want, atol=1e-15)


def test_commutator_antihermitian_imaginary_diagonal():
    rng = np.random.default_rng(11)
    h = rng.standard_normal((6, 6))
    h = h + h.T
    rho = random_density(rng, 6)
    c = commutator(h, rho)
    np.testing.assert_allclose(c, -c.conj().T, atol=1e-13)
    np.testing.assert_allclose(np.real(np.diagonal(c)), 0.0, atol=1e-13)


def test_constructor_tolerates_tiny_asymmetry():
    m = np.array([[1.0, 0.5 + 1e-13j], [0.5, 0.0]])
    hm = HermitianMatrix(m)
    np.testing.assert_allclose(hm.as_array(), hm.as_array().conj().T, atol=0)


def test_constructor_rejects_visible_asymmetry():
    m = np.array([[1.0, 0.5 + 1e-9j], [0.5, 0.0]])
    with pytest.raises(ValidationError):
        HermitianMatrix(m)


def test_constructor_rejects_nonsquare():
    with pytest.raises(DimensionMismatchError):
        HermitianMatrix(np.zeros((2, 3)))


def test_set_writes_mirror_entry():
    hm = HermitianMatrix.zeros(3)
    hm.set(0, 2, 0.25 - 0.5j)
    assert hm.get(0, 2) == 0.25 - 0.5j
    assert hm.get(2, 0) == 0.25 + 0.5j


def test_set_rejects_complex_diagonal():
    hm = HermitianMatrix.zeros(2)
    with pytest.raises(ValidationError):
        hm.set(1, 1, 0.3 + 1e-6j)
    hm.set(1, 1, 0.3)  # real write is fine
    assert hm.get(1, 1) == 0.3


def test_factories():
    z = HermitianMatrix.zeros(4)
    np.testing.assert_array_equal(z.as_array(), np.zeros((4, 4)))
    b = HermitianMatrix.basis_state(3, 1)
    np.testing.assert_array_equal(b.populations(), [0.0, 1.0, 0.0])
    d = HermitianMatrix.from_diagonal([0.5, 0.3, 0.2])
    assert d.trace() == pytest.approx(1.0)
    np.testing.assert_allclose(d.purity(), 0.25 + 0.09 + 0.04)


def test_trace_and_purity_on_mixed_state():
    rho = HermitianMatrix(np.array([[0.7, 0.2j], [-0.2j, 0.3]]))
    np.testing.assert_allclose(rho.trace(), 1.0)
    # tr rho^2 = 0.49 + 0.09 + 2 * 0.04
    np.testing.assert_allclose(rho.purity(), 0.66)


def test_eigenvalues_of_two_level_hamiltonian():
    lam = HermitianMatrix(H2.astype(complex)).eigenvalues()
    r = 0.2 * np.sqrt(2.0)
    np.testing.assert_allclose(lam, [-r, r], atol=1e-15)


def test_validate_density_lists_all_violations():
    bad = HermitianMatrix(2.0 * np.eye(2))
    with pytest.raises(ValidationError) as err:
        bad.validate_density()
    msg = str(err.value)
    assert "trace" in msg and "purity" in msg


def test_validate_density_accepts_pure_state():
    HermitianMatrix.basis_state(5, 2).validate_density()


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=10**6), st.integers(min_value=2, max_value=8))
def test_random_densities_pass_validation(seed, dim):
    rho = HermitianMatrix(random_density(np.random.default_rng(seed), dim))
    rho.validate_density()
    assert rho.purity() <= 1.0 + 1e-12
    assert rho.eigenvalues()[0] >= -1e-12


def test_as_matrix_shares_storage_with_hermitian():
    hm = HermitianMatrix.zeros(2)
    assert as_matrix(hm) is hm._m
    arr = np.eye(2, dtype=np.complex128)
    np.testing.assert_array_equal(as_matrix(arr), arr)


def test_array_protocol_copies():
    hm = HermitianMatrix.basis_state(2, 0)
    arr = np.asarray(hm)
    arr[0, 0] = 5.0
    assert hm.get(0, 0) == 1.0


def test_spectral_data_rejects_non_orthonormal_vectors():
    with pytest.raises(ValidationError):
        SpectralData(eigenvalues=np.array([1.0, 2.0]), eigenvectors=np.full((2, 2), 0.9))


def test_spectral_data_shape_mismatch():
    with pytest.raises(DimensionMismatchError):
        SpectralData(eigenvalues=np.array([1.0, 2.0, 3.0]), eigenvectors=np.eye(2))
