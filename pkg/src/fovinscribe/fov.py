"""Support functions and boundary sampling for the field of values.

Direction convention: the support value at angle ``theta`` is the largest
extent of ``F(A)`` along the unit direction ``exp(i theta)``,

    h(theta) = max Re(exp(-i theta) z),  z in F(A)
             = lambda_max((exp(-i theta) A + exp(i theta) A*) / 2).

The rotated Hermitian parts are diagonalised with LAPACK (``numpy.linalg``)
in one batched call per angle grid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from .linalg import ComplexMatrix, ComplexVector, adjoint, as_square, scale
from .rng import SplitMix64

DEFAULT_ANGLES = 360


@dataclass(frozen=True)
class SupportSample:
    theta: float
    support: float
    boundary_point: complex
    witness: ComplexVector


@dataclass(frozen=True)
class FovBoundary:
    """Support data on a uniform angle grid, in increasing ``theta``."""

    thetas: npt.NDArray[np.float64]
    supports: npt.NDArray[np.float64]
    points: npt.NDArray[np.complex128]
    witnesses: npt.NDArray[np.complex128]  # row j is the witness at thetas[j]
    source_dim: int

    def __len__(self) -> int:
        return self.thetas.size

    @property
    def samples(self) -> list[SupportSample]:
        return [
            SupportSample(float(t), float(h), complex(p), w)
            for t, h, p, w in zip(self.thetas, self.supports, self.points, self.witnesses)
        ]

    def turn_products(self) -> npt.NDArray[np.float64]:
        """Cross products of consecutive edge vectors around the closed curve.

        All entries are >= 0 (up to rounding) for a counterclockwise convex
        curve; repeated points give zeros.
        """
        p = self.points
        e1 = np.roll(p, -1) - p
        e2 = np.roll(p, -2) - np.roll(p, -1)
        return (e1.conj() * e2).imag


def angle_grid(n_angles: int = DEFAULT_ANGLES) -> npt.NDArray[np.float64]:
    if n_angles < 1:
        raise ValueError("n_angles must be positive")
    return 2.0 * np.pi * np.arange(n_angles) / n_angles


def rotated_hermitian_parts(a, thetas) -> npt.NDArray[np.complex128]:
    a = as_square(a)
    phase = np.exp(-1j * np.asarray(thetas, dtype=np.float64))[:, None, None]
    return (phase * a + phase.conj() * adjoint(a)) / 2


def support_values(a, thetas) -> npt.NDArray[np.float64]:
    """``h(theta)`` for every angle in ``thetas`` (batched, values only).

    When the second half of ``thetas`` is the first half shifted by ``pi``
    (as on :func:`angle_grid` with an even count) only the first half is
    diagonalised, since ``H(theta + pi) = -H(theta)``.
    """
    thetas = np.asarray(thetas, dtype=np.float64)
    half = thetas.size // 2
    if thetas.size % 2 == 0 and half > 0 and np.allclose(
        thetas[half:] - thetas[:half], np.pi, rtol=0.0, atol=1e-12
    ):
        vals = np.linalg.eigvalsh(rotated_hermitian_parts(a, thetas[:half]))
        return np.concatenate([vals[:, -1], -vals[:, 0]])
    return np.linalg.eigvalsh(rotated_hermitian_parts(a, thetas))[:, -1]


def _support_batch(a: ComplexMatrix, thetas):
    vals, vecs = np.linalg.eigh(rotated_hermitian_parts(a, thetas))
    witnesses = vecs[:, :, -1]
    points = np.einsum("ti,ij,tj->t", witnesses.conj(), a, witnesses)
    return vals[:, -1], points, witnesses


def support(a, theta: float) -> SupportSample:
    a = as_square(a)
    h, p, w = _support_batch(a, [theta])
    return SupportSample(float(theta), float(h[0]), complex(p[0]), w[0])


def boundary(a, n_angles: int = DEFAULT_ANGLES) -> FovBoundary:
    if n_angles < 3:
        raise ValueError("need at least 3 angles")
    a = as_square(a)
    thetas = angle_grid(n_angles)
    h, p, w = _support_batch(a, thetas)
    return FovBoundary(thetas, h, p, w, a.shape[0])


def contains(a, z, n_angles: int = DEFAULT_ANGLES, tol: float = 1e-8):
    """Outer support-function membership test.

    ``z`` passes when ``Re(exp(-i theta) z) <= h(theta) + tol`` at every grid
    angle. This accepts every point of ``F(A)`` but also a thin shell
    outside it; pass a negative ``tol`` to demand interiority instead.
    Works elementwise when ``z`` is an array.
    """
    thetas = angle_grid(n_angles)
    return within_support(support_values(a, thetas) + tol, thetas, z)


def within_support(h, thetas, z):
    """``Re(exp(-i theta) z) <= h(theta)`` at every angle, elementwise in ``z``."""
    rot = np.exp(-1j * np.asarray(thetas, dtype=np.float64))
    zs = np.asarray(z, dtype=np.complex128)
    if zs.ndim == 0:
        return bool(np.all((rot * zs).real <= h))
    flat = zs.ravel()
    ok = np.empty(flat.size, dtype=bool)
    for start in range(0, flat.size, 4096):
        chunk = flat[start:start + 4096]
        ok[start:start + 4096] = np.all((chunk[:, None] * rot).real <= h, axis=1)
    return ok.reshape(zs.shape)


def random_field_samples(a, count: int, seed: int) -> npt.NDArray[np.complex128]:
    """``x* A x`` for ``count`` random unit vectors ``x``, reproducible by seed.

    Entries of ``x`` are complex Gaussians from a SplitMix64 stream; the real
    and imaginary parts of sample ``j`` are consecutive blocks of ``n``.
    """
    a = as_square(a)
    n = a.shape[0]
    g = SplitMix64(seed).normal(2 * n * count).reshape(count, 2, n)
    x = g[:, 0, :] + 1j * g[:, 1, :]
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    return np.einsum("ti,ij,tj->t", x.conj(), a, x)


def hull_support_values(points, thetas) -> npt.NDArray[np.float64]:
    """Support function of the convex hull of a finite point set."""
    pts = np.asarray(points, dtype=np.complex128)
    return (np.exp(-1j * np.asarray(thetas))[:, None] * pts[None, :]).real.max(axis=1)


def support_gaps(a, eigenvalues, n_angles: int = DEFAULT_ANGLES):
    """Angles and ``h_F(A)(theta) - h_co(sigma)(theta)`` on the grid."""
    thetas = angle_grid(n_angles)
    return thetas, support_values(a, thetas) - hull_support_values(eigenvalues, thetas)


def support_gap_to_hull(a, eigenvalues, n_angles: int = DEFAULT_ANGLES) -> float:
    """Largest amount by which ``F(A)`` sticks out of ``co(eigenvalues)``.

    Never meaningfully negative since the spectrum lies in the field; a
    value near zero means ``A`` is numerically convexoid on the grid.
    """
    return float(support_gaps(a, eigenvalues, n_angles)[1].max())


def default_tol(a, rel: float = 1e-8) -> float:
    return rel * scale(a)
