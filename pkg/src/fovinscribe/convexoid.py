"""Convexoid tests and eigendecomposition of normal matrices.

A matrix is convexoid when its field of values equals the convex hull of
its spectrum. Johnson's characterisation (normal, or unitarily similar to
``A1 (+) A2`` with ``A1`` normal and ``F(A2)`` inside ``F(A1)``) is only
*verified* here for a caller-supplied unitary and split point; no search
for such a decomposition is attempted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from .errors import BadSplit, NotNormal
from .fov import DEFAULT_ANGLES, angle_grid, support_gaps, support_values
from .linalg import (
    ComplexMatrix,
    adjoint,
    as_square,
    fro,
    hermitian_eigen,
    is_normal,
    is_unitary,
    scale,
)

CLUSTER_TOL = 1e-7


@dataclass(frozen=True)
class ConvexoidVerdict:
    """Outcome of the grid-based convexoid test.

    The test is one-sided: ``is_convexoid`` certifies the support gap only
    at the ``n_angles`` sampled directions.
    """

    is_convexoid: bool
    max_support_gap: float
    n_angles: int
    worst_angle: float
    is_normal: bool
    tol: float


def is_convexoid_numeric(
    a, eigenvalues, n_angles: int = DEFAULT_ANGLES, tol: float | None = None
) -> ConvexoidVerdict:
    a = as_square(a)
    if n_angles < 90:
        raise ValueError("use at least 90 angles")
    if tol is None:
        tol = 1e-8 * scale(a)
    thetas, gaps = support_gaps(a, eigenvalues, n_angles)
    worst = int(np.argmax(gaps))
    gap = float(gaps[worst])
    return ConvexoidVerdict(
        is_convexoid=gap <= tol,
        max_support_gap=gap,
        n_angles=n_angles,
        worst_angle=float(thetas[worst]),
        is_normal=is_normal(a),
        tol=tol,
    )


def verify_johnson_decomposition(
    a, u, split: int, tol: float = 1e-8, n_angles: int = DEFAULT_ANGLES
) -> bool:
    """Check that ``U* A U = A1 (+) A2`` with ``A1`` (``split x split``) normal
    and ``F(A2)`` inside ``F(A1)`` on the support grid.

    Block and support comparisons use ``tol * (1 + ||A||_F)``.
    """
    a = as_square(a)
    u = as_square(u)
    n = a.shape[0]
    if u.shape != a.shape:
        raise BadSplit(f"unitary of shape {u.shape} for matrix of order {n}")
    if not 1 <= split < n:
        raise BadSplit(f"split {split} outside 1..{n - 1}")
    if not is_unitary(u, tol):
        return False
    abs_tol = tol * scale(a)
    b = adjoint(u) @ a @ u
    a1, a2 = b[:split, :split], b[split:, split:]
    if fro(b[:split, split:]) > abs_tol or fro(b[split:, :split]) > abs_tol:
        return False
    if not is_normal(a1, tol):
        return False
    thetas = angle_grid(n_angles)
    return bool(np.all(support_values(a2, thetas) <= support_values(a1, thetas) + abs_tol))


def _clusters(values: npt.NDArray[np.float64], tol: float) -> list[list[int]]:
    groups = [[0]]
    for m in range(1, values.size):
        if values[m] - values[m - 1] <= tol:
            groups[-1].append(m)
        else:
            groups.append([m])
    return groups


def eigen_decompose_normal(a, tol: float = 1e-10) -> tuple[npt.NDArray[np.complex128], ComplexMatrix]:
    """Return ``(eigenvalues, U)`` with ``A = U diag(eigenvalues) U*``.

    The Hermitian part ``(A + A*)/2`` is diagonalised first; inside each of
    its eigenvalue clusters (gap at most ``1e-7 (1 + ||A||_F)``) the
    compressed skew part ``(A - A*)/(2i)`` is diagonalised as well. Both
    steps use the Jacobi solver.
    """
    a = as_square(a)
    if not is_normal(a, tol):
        raise NotNormal("matrix is not normal")
    ah = adjoint(a)
    herm = (a + ah) / 2
    skew = (a - ah) / 2j
    mu, q = hermitian_eigen(herm)
    for group in _clusters(mu, CLUSTER_TOL * scale(a)):
        if len(group) == 1:
            continue
        qc = q[:, group]
        inner = adjoint(qc) @ skew @ qc
        _, r = hermitian_eigen((inner + adjoint(inner)) / 2)
        q[:, group] = qc @ r
    lam = np.einsum("ij,ik,kj->j", q.conj(), a, q)
    return lam, q
