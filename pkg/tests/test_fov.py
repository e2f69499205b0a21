import numpy as np
import pytest

from fovinscribe.fov import (
    angle_grid,
    boundary,
    contains,
    random_field_samples,
    rotated_hermitian_parts,
    support,
    support_gap_to_hull,
    support_values,
)
from fovinscribe.linalg import hermitian_eigen
from fovinscribe.polygon import convex_hull, distance_to_boundary
from fovinscribe.rng import SplitMix64
from matrices import JORDAN, random_general, random_hermitian, square_plus_jordan


def jordan_rayleigh_grid(m=400):
    """Every unit vector of C^2 is (cos a, e^{i phi} sin a) up to a global phase,
    and x* J x = cos a sin a e^{i phi}; enumerate that parametrisation."""
    a = np.linspace(0, np.pi / 2, m)
    phi = np.linspace(0, 2 * np.pi, 4 * m, endpoint=False)
    return (np.cos(a) * np.sin(a))[:, None] * np.exp(1j * phi)[None, :]


class TestSplitMix:
    def test_reference_vector(self):
        # published SplitMix64 outputs for seed 1234567
        assert SplitMix64(1234567).next_u64(3).tolist() == [
            6457827717110365317,
            3203168211198807973,
            9817491932198370423,
        ]

    def test_scalar_oracle(self):
        def scalar(seed, count):
            mask = 2**64 - 1
            out, s = [], seed
            for _ in range(count):
                s = (s + 0x9E3779B97F4A7C15) & mask
                z = s
                z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
                z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
                out.append(z ^ (z >> 31))
            return out

        gen = SplitMix64(42)
        first = gen.next_u64(5).tolist()
        second = gen.next_u64(3).tolist()
        assert first + second == scalar(42, 8)

    def test_uniform_range(self):
        u = SplitMix64(7).uniform(10000)
        assert u.min() >= 0 and u.max() < 1
        assert abs(u.mean() - 0.5) < 0.02


class TestSupport:
    def test_diag(self):
        s = support(np.diag([0, 1]), 0.0)
        assert abs(s.support - 1) < 1e-15 and abs(s.boundary_point - 1) < 1e-15

    @pytest.mark.parametrize("theta", [0.0, 0.3, 2.0, 4.5])
    def test_identity(self, theta):
        s = support(np.eye(3), theta)
        assert abs(s.support - np.cos(theta)) < 1e-14
        assert abs(s.boundary_point - 1) < 1e-14

    @pytest.mark.parametrize("theta", angle_grid(12))
    def test_jordan_disk(self, theta):
        zs = jordan_rayleigh_grid()
        brute = (np.exp(-1j * theta) * zs).real.max()
        s = support(JORDAN, theta)
        assert abs(s.support - 0.5) < 1e-12
        assert brute <= s.support + 1e-12
        assert brute > 0.5 - 1e-4

    def test_sample_invariants(self, rng):
        a = random_general(rng, 5)
        for theta in (0.1, 1.0, 3.0):
            s = support(a, theta)
            assert abs((np.exp(-1j * theta) * s.boundary_point).real - s.support) < 1e-9
            assert abs(np.linalg.norm(s.witness) - 1) < 1e-10
            assert abs(np.vdot(s.witness, a @ s.witness) - s.boundary_point) < 1e-12

    def test_matches_jacobi(self, rng):
        # LAPACK route against the in-house Jacobi solver
        a = random_general(rng, 6)
        thetas = angle_grid(24)
        jac = [hermitian_eigen(h).eigenvalues[-1] for h in rotated_hermitian_parts(a, thetas)]
        np.testing.assert_allclose(support_values(a, thetas), jac, atol=1e-12)


class TestBoundary:
    def test_square(self):
        b = boundary(np.diag([1, 1j, -1, -1j]), 360)
        poly = convex_hull([1, 1j, -1, -1j])
        assert max(distance_to_boundary(poly, p) for p in b.points) <= 1e-8

    def test_hermitian(self, rng):
        h = random_hermitian(rng, 4)
        lam = np.linalg.eigvalsh(h)
        b = boundary(h, 360)
        assert np.abs(b.points.imag).max() <= 1e-10
        assert abs(b.points.real.min() - lam[0]) < 1e-10
        assert abs(b.points.real.max() - lam[-1]) < 1e-10

    def test_jordan_circle(self):
        b = boundary(JORDAN, 360)
        np.testing.assert_allclose(np.abs(b.points), 0.5, atol=1e-8)

    def test_grid_and_convexity(self, rng):
        a = random_general(rng, 6)
        b = boundary(a, 90)
        np.testing.assert_allclose(b.thetas, 2 * np.pi * np.arange(90) / 90)
        assert np.all(np.diff(b.thetas) > 0)
        assert b.turn_products().min() >= -1e-8 * (1 + np.linalg.norm(a))
        assert len(b.samples) == 90 and b.source_dim == 6

    def test_too_few_angles(self):
        with pytest.raises(ValueError):
            boundary(np.eye(2), 2)


class TestContains:
    def test_segment(self):
        assert contains(np.diag([0, 1]), 0.5, 360, 1e-9)
        assert not contains(np.diag([0, 1]), 2.0, 360, 1e-9)
        assert not contains(np.diag([0, 1]), 0.5 + 0.01j, 360, 1e-9)

    def test_eigenvalues_inside(self, rng):
        for _ in range(5):
            a = random_general(rng, 5)
            assert np.all(contains(a, np.linalg.eigvals(a), 360, 1e-8))

    def test_vectorised(self):
        out = contains(JORDAN, np.array([0, 0.49, 0.6j, -0.2 + 0.2j]), 360, 1e-9)
        assert out.tolist() == [True, True, False, True]

    def test_negative_tol_is_strict(self):
        assert contains(np.diag([0, 1]), 1.0, 360, 1e-9)
        assert not contains(np.diag([0, 1]), 1.0, 360, -1e-9)


class TestRandomSamples:
    def test_identity(self):
        np.testing.assert_allclose(random_field_samples(np.eye(3), 50, 1), 1, atol=1e-12)

    def test_segment(self):
        z = random_field_samples(np.diag([0, 1]), 200, 3)
        assert np.abs(z.imag).max() < 1e-15
        assert z.real.min() >= 0 and z.real.max() <= 1

    def test_reproducible(self, rng):
        a = random_general(rng, 4)
        np.testing.assert_array_equal(random_field_samples(a, 30, 9), random_field_samples(a, 30, 9))
        assert not np.array_equal(random_field_samples(a, 30, 9), random_field_samples(a, 30, 10))

    def test_inside_field(self, rng):
        a = random_general(rng, 4)
        assert contains(a, random_field_samples(a, 2000, 5), 360, 1e-8).all()


class TestSupportGap:
    def test_normal(self, rng):
        from matrices import random_normal

        lam = rng.normal(size=5) + 1j * rng.normal(size=5)
        a = random_normal(rng, 5, lam)
        assert support_gap_to_hull(a, lam, 360) <= 1e-9

    def test_jordan(self):
        assert abs(support_gap_to_hull(JORDAN, [0, 0], 360) - 0.5) < 1e-8

    def test_square_plus_disk(self):
        a = square_plus_jordan()
        assert support_gap_to_hull(a, [2, -2, 2j, -2j, 0, 0], 360) <= 1e-9

    def test_never_negative(self, rng):
        a = random_general(rng, 6)
        assert support_gap_to_hull(a, np.linalg.eigvals(a), 360) >= -1e-9
