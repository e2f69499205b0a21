import numpy as np
import pytest

from fovinscribe.convexoid import (
    eigen_decompose_normal,
    is_convexoid_numeric,
    verify_johnson_decomposition,
)
from fovinscribe.errors import BadSplit, NotNormal
from fovinscribe.fov import support_values
from fovinscribe.linalg import dft_matrix
from matrices import EXAMPLE_A, EXAMPLE_D, JORDAN, random_normal, random_unitary, square_plus_jordan


def multiset_distance(a, b):
    """Largest gap after greedy nearest matching of two small multisets."""
    rest = list(b)
    worst = 0.0
    for z in a:
        m = int(np.argmin([abs(z - y) for y in rest]))
        worst = max(worst, abs(z - rest.pop(m)))
    return worst


class TestVerdict:
    def test_normal(self, rng):
        for n in (1, 3, 6):
            lam = rng.normal(size=n) + 1j * rng.normal(size=n)
            v = is_convexoid_numeric(random_normal(rng, n, lam), lam)
            assert v.is_convexoid and v.is_normal
            assert v.max_support_gap <= 1e-8

    def test_jordan(self):
        v = is_convexoid_numeric(JORDAN, [0, 0])
        assert not v.is_convexoid and not v.is_normal
        assert abs(v.max_support_gap - 0.5) < 1e-6

    def test_square_plus_disk(self):
        v = is_convexoid_numeric(square_plus_jordan(), [2, -2, 2j, -2j, 0, 0])
        assert v.is_convexoid and not v.is_normal

    def test_hidden_by_unitary_similarity(self, rng):
        u = random_unitary(rng, 6)
        a = u @ square_plus_jordan() @ u.conj().T
        assert is_convexoid_numeric(a, [2, -2, 2j, -2j, 0, 0]).is_convexoid

    def test_needs_enough_angles(self):
        with pytest.raises(ValueError):
            is_convexoid_numeric(JORDAN, [0, 0], n_angles=30)


class TestJohnson:
    def test_split_four(self):
        assert verify_johnson_decomposition(square_plus_jordan(), np.eye(6), 4)

    def test_split_two(self):
        a = square_plus_jordan()
        assert not verify_johnson_decomposition(a, np.eye(6), 2)
        # the failing condition: upward extent of the trailing block beats the leading one
        top = np.array([np.pi / 2])
        assert support_values(a[:2, :2], top)[0] < support_values(a[2:, 2:], top)[0]

    def test_rotated(self, rng):
        u = random_unitary(rng, 6)
        a = u @ square_plus_jordan() @ u.conj().T
        assert verify_johnson_decomposition(a, u, 4)

    def test_not_unitary(self):
        assert not verify_johnson_decomposition(square_plus_jordan(), 2 * np.eye(6), 4)

    def test_coupled_blocks(self):
        a = square_plus_jordan()
        a[0, 5] = 0.3
        assert not verify_johnson_decomposition(a, np.eye(6), 4)

    def test_bad_split(self):
        with pytest.raises(BadSplit):
            verify_johnson_decomposition(square_plus_jordan(), np.eye(6), 6)
        with pytest.raises(BadSplit):
            verify_johnson_decomposition(square_plus_jordan(), np.eye(5), 2)


class TestNormalDecomposition:
    def test_diagonal(self):
        d = np.array([2 + 1j, -1, 0.5j])
        lam, u = eigen_decompose_normal(np.diag(d))
        assert multiset_distance(lam, d) < 1e-15
        # columns are standard basis vectors up to phase
        np.testing.assert_allclose(np.abs(u) ** 2 @ np.ones(3), 1)
        assert np.all((np.abs(u) < 1e-15) | (np.abs(np.abs(u) - 1) < 1e-15))

    def test_example(self):
        lam, u = eigen_decompose_normal(EXAMPLE_A)
        assert multiset_distance(lam, EXAMPLE_D) <= 1e-9

    def test_dft(self, rng):
        d = rng.normal(size=6) + 1j * rng.normal(size=6)
        f = dft_matrix(6)
        lam, _ = eigen_decompose_normal((f * d) @ f.conj().T)
        assert multiset_distance(lam, d) <= 1e-9

    @pytest.mark.parametrize("seed", range(5))
    def test_residual(self, seed):
        rng = np.random.default_rng(seed)
        a = random_normal(rng, 7)
        lam, u = eigen_decompose_normal(a)
        s = 1 + np.linalg.norm(a)
        assert np.linalg.norm(a - (u * lam) @ u.conj().T) <= 1e-9 * s
        assert np.linalg.norm(u.conj().T @ u - np.eye(7)) <= 1e-9

    def test_clusters(self, rng):
        # equal real parts force the skew-part refinement
        d = np.array([1 + 1j, 1 - 1j, 1 + 3j, -2, -2, 0.5j])
        a = random_normal(rng, 6, d)
        lam, u = eigen_decompose_normal(a)
        assert multiset_distance(lam, d) <= 1e-9
        assert np.linalg.norm(a - (u * lam) @ u.conj().T) <= 1e-9 * (1 + np.linalg.norm(a))

    def test_permutation_similarity(self, rng):
        a = random_normal(rng, 5)
        p = np.eye(5)[[3, 0, 4, 1, 2]]
        lam1, _ = eigen_decompose_normal(a)
        lam2, _ = eigen_decompose_normal(p @ a @ p.T)
        assert multiset_distance(lam1, lam2) < 1e-10

    def test_rejects_non_normal(self):
        with pytest.raises(NotNormal):
            eigen_decompose_normal(JORDAN)
