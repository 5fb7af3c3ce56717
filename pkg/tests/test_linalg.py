import numpy as np
import pytest
import scipy.sparse as sp

from conftest import random_hermitian
from qparam.errors import InvalidInputError, ResourceError
from qparam.linalg import (
    DENSE_THRESHOLD,
    full_spectrum,
    is_hermitian,
    matrix_from_json,
    matrix_to_json,
    min_eigenvalue,
)


class TestMinEigenvalue:
    def test_identity(self):
        assert min_eigenvalue(np.eye(2)) == pytest.approx(1.0)

    def test_diagonal(self):
        assert min_eigenvalue(np.diag([3.0, -2.0])) == pytest.approx(-2.0)

    def test_iterative_matches_dense(self, rng):
        # [DERIVED] dense full diagonalization oracle
        for _ in range(10):
            m = random_hermitian(rng, 6)
            dense = min_eigenvalue(m, mode="dense")
            iterative = min_eigenvalue(m, mode="iterative")
            assert iterative == pytest.approx(dense, abs=1e-8)

    def test_sparse_input(self, rng):
        m = random_hermitian(rng, 40)
        sparse = sp.csr_matrix(m)
        assert min_eigenvalue(sparse, mode="iterative") == pytest.approx(
            min_eigenvalue(m, mode="dense"), abs=1e-8
        )

    def test_rayleigh_bound(self, rng):
        m = random_hermitian(rng, 8)
        lam = min_eigenvalue(m)
        for _ in range(100):
            v = rng.normal(size=8) + 1j * rng.normal(size=8)
            quotient = (v.conj() @ m @ v).real / (v.conj() @ v).real
            assert lam <= quotient + 1e-9

    def test_non_hermitian_rejected(self):
        with pytest.raises(InvalidInputError):
            min_eigenvalue(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_unknown_mode_rejected(self):
        with pytest.raises(InvalidInputError):
            min_eigenvalue(np.eye(2), mode="magic")


class TestFullSpectrum:
    def test_diag(self):
        assert np.allclose(full_spectrum(np.diag([1.0, 0.0])), [0.0, 1.0])

    def test_pauli_x(self):
        x = np.array([[0, 1], [1, 0]], dtype=complex)
        assert np.allclose(full_spectrum(x), [-1.0, 1.0])

    def test_sum_equals_trace(self, rng):
        # [DERIVED] trace computation
        m = random_hermitian(rng, 4)
        assert np.sum(full_spectrum(m)) == pytest.approx(
            np.trace(m).real, abs=1e-8
        )

    def test_permutation_invariance(self, rng):
        m = random_hermitian(rng, 6)
        perm = rng.permutation(6)
        permuted = m[np.ix_(perm, perm)]
        assert np.allclose(full_spectrum(m), full_spectrum(permuted))

    def test_resource_limit(self):
        big = sp.identity(DENSE_THRESHOLD + 1, format="csr")
        with pytest.raises(ResourceError):
            full_spectrum(big)


class TestSerialization:
    def test_roundtrip(self, rng):
        m = random_hermitian(rng, 3)
        assert np.allclose(matrix_from_json(matrix_to_json(m)), m)

    def test_malformed_rejected(self):
        with pytest.raises(InvalidInputError):
            matrix_from_json([[1, 2], [3]])

    def test_is_hermitian(self, rng):
        assert is_hermitian(random_hermitian(rng, 5))
        assert not is_hermitian(np.array([[0, 1j], [1j, 0]]))
