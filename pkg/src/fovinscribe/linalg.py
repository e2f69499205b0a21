"""Dense complex linear algebra for small matrices.

Matrices and vectors are plain ``numpy`` arrays of dtype ``complex128``.
Row and column indices that appear in the public API (deletion index ``k``,
phase index) are 1-based, matching the usual mathematical labelling
``A_(k)`` for the principal submatrix with row and column ``k`` removed.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np
import numpy.typing as npt

from .errors import (
    DimensionMismatch,
    IndexOutOfRange,
    NoConvergence,
    NonHermitian,
    NonSquare,
    NonzeroDeletedEntry,
    NotUnit,
    ShapeError,
    TooSmall,
    ZeroComponent,
)

ComplexMatrix = npt.NDArray[np.complex128]
ComplexVector = npt.NDArray[np.complex128]

#: relative threshold below which a vector component counts as zero
ZERO_THRESHOLD = 1e-12


class EigenDecomposition(NamedTuple):
    """Eigenvalues (ascending) and unit eigenvectors stored as columns."""

    eigenvalues: npt.NDArray[np.float64]
    eigenvectors: ComplexMatrix


def as_matrix(a) -> ComplexMatrix:
    m = np.array(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] == 0 or m.shape[1] == 0:
        raise ShapeError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ShapeError("matrix has non-finite entries")
    return m


def as_vector(v) -> ComplexVector:
    x = np.array(v, dtype=np.complex128)
    if x.ndim != 1 or x.size == 0:
        raise ShapeError(f"expected a non-empty 1-D vector, got shape {x.shape}")
    if not np.all(np.isfinite(x)):
        raise ShapeError("vector has non-finite entries")
    return x


def as_square(a) -> ComplexMatrix:
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise NonSquare(f"expected a square matrix, got shape {m.shape}")
    return m


def adjoint(a: ComplexMatrix) -> ComplexMatrix:
    return a.conj().T


def fro(a) -> float:
    return float(np.linalg.norm(a))


def scale(a) -> float:
    """Magnitude used to make tolerances relative: ``1 + ||a||_F``."""
    return 1.0 + fro(a)


def is_zero_component(v: ComplexVector, k: int) -> bool:
    """Whether ``|v_k| <= 1e-12 * ||v||`` (``k`` is 1-based)."""
    return abs(v[k - 1]) <= ZERO_THRESHOLD * np.linalg.norm(v)


def _check_index(n: int, k: int) -> None:
    if not 1 <= k <= n:
        raise IndexOutOfRange(f"index {k} outside 1..{n}")


def hermitian_eigen(h, max_sweeps: int = 100, tol: float = 1e-14) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi.

    Each pivot ``(p, q)`` is annihilated by a phase rotation that makes
    ``h[p, q]`` real followed by a real plane rotation. Pivots are visited in
    round-robin order, ``n // 2`` disjoint ones at a time. Sweeps repeat until
    the off-diagonal Frobenius norm drops below ``tol * ||h||_F``.

    Parameters
    ----------
    h : array_like
        Hermitian matrix; ``||h - h*||_F <= 1e-12 (1 + ||h||_F)`` is required.
    max_sweeps : int
        Raise :class:`NoConvergence` if more sweeps would be needed.
    tol : float
        Relative off-diagonal convergence threshold.

    Returns
    -------
    EigenDecomposition
        Real eigenvalues in ascending order and the unitary matrix of
        eigenvectors (column ``j`` belongs to eigenvalue ``j``).
    """
    h = as_square(h)
    if fro(h - adjoint(h)) > 1e-12 * scale(h):
        raise NonHermitian("matrix is not Hermitian")
    a = (h + adjoint(h)) / 2
    n = a.shape[0]
    q = np.eye(n, dtype=np.complex128)
    target = tol * fro(a)

    def off_norm() -> float:
        return fro(a - np.diag(np.diag(a)))

    # round-robin schedule: each round is a set of disjoint pivots whose
    # rotations commute, so they are applied together as one matrix
    m = n + n % 2
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[i], players[m - 1 - i]) for i in range(m // 2)]
        pairs = [(min(x, y), max(x, y)) for x, y in pairs if max(x, y) < n]
        rounds.append((np.array([x for x, _ in pairs], dtype=int), np.array([y for _, y in pairs], dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]

    sweeps = 0
    while off_norm() > target:
        if sweeps == max_sweeps:
            raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")
        for ps, rs in rounds:
            apr = a[ps, rs]
            mag = np.abs(apr)
            live = mag > 0.0
            if not live.any():
                continue
            ps, rs, apr, mag = ps[live], rs[live], apr[live], mag[live]
            phase = np.conj(apr / mag)
            theta = 0.5 * np.arctan2(2.0 * mag, a[rs, rs].real - a[ps, ps].real)
            c, s = np.cos(theta), np.sin(theta)
            rot = np.eye(n, dtype=np.complex128)
            rot[ps, ps] = c
            rot[ps, rs] = s
            rot[rs, ps] = -s * phase
            rot[rs, rs] = c * phase
            a = adjoint(rot) @ a @ rot
            a[ps, rs] = a[rs, ps] = 0.0
            a[np.diag_indices(n)] = np.diag(a).real
            q = q @ rot
        sweeps += 1

    values = np.diag(a).real.copy()
    order = np.argsort(values, kind="stable")
    return EigenDecomposition(values[order], q[:, order])


def is_unitary(u, tol: float = 1e-10) -> bool:
    u = as_square(u)
    return fro(adjoint(u) @ u - np.eye(u.shape[0])) <= tol


def is_normal(a, tol: float = 1e-10) -> bool:
    """True iff ``||A*A - AA*||_F <= tol (1 + ||A||_F^2)``."""
    a = as_square(a)
    ah = adjoint(a)
    return fro(ah @ a - a @ ah) <= tol * (1.0 + fro(a) ** 2)


def dft_matrix(n: int) -> ComplexMatrix:
    """Unitary DFT matrix with entries ``exp(-2 pi i (i-1)(j-1) / n) / sqrt(n)``."""
    if n < 1:
        raise ShapeError("n must be positive")
    idx = np.arange(n)
    # reduce the exponent mod n before exponentiating to keep phases exact-ish
    expo = np.outer(idx, idx) % n
    return np.exp(-2j * np.pi * expo / n) / math.sqrt(n)


def phase_normalize(v, k: int) -> ComplexVector:
    """Rotate ``v`` by a unit scalar so that its ``k``-th entry is real positive.

    Multiplying an eigenvector by ``exp(-i arg v_k)`` keeps it an eigenvector
    of the same length.
    """
    v = as_vector(v)
    _check_index(v.size, k)
    if is_zero_component(v, k):
        raise ZeroComponent(f"component {k} is numerically zero")
    vk = v[k - 1]
    w = v * np.exp(-1j * np.angle(vk))
    w[k - 1] = abs(vk)
    return w


def deletion_projector(n: int, k: int) -> npt.NDArray[np.float64]:
    """The ``n x (n-1)`` matrix ``[e_j for j != k]`` in ascending ``j``."""
    if n < 2:
        raise TooSmall("deletion needs n >= 2")
    _check_index(n, k)
    return np.delete(np.eye(n), k - 1, axis=1)


def project_down(y, k: int) -> ComplexVector:
    """Return ``P^T y`` for the deletion projector ``P``; requires ``y_k = 0``.

    When ``y_k`` is exactly zero, ``P @ project_down(y, k)`` reproduces ``y``
    bit for bit.
    """
    y = as_vector(y)
    if y.size < 2:
        raise TooSmall("deletion needs n >= 2")
    _check_index(y.size, k)
    if not is_zero_component(y, k):
        raise NonzeroDeletedEntry(f"entry {k} = {y[k - 1]!r} is not zero")
    return np.delete(y, k - 1)


def principal_submatrix(a, k: int) -> ComplexMatrix:
    """``A_(k)``: delete row ``k`` and column ``k``."""
    a = as_square(a)
    n = a.shape[0]
    if n < 2:
        raise TooSmall("a 1x1 matrix has no proper principal submatrix")
    _check_index(n, k)
    return np.delete(np.delete(a, k - 1, axis=0), k - 1, axis=1)


def rayleigh(a, x) -> complex:
    """``x* A x`` for a unit vector ``x``."""
    a = as_square(a)
    x = as_vector(x)
    if x.size != a.shape[0]:
        raise DimensionMismatch(f"vector of length {x.size} vs matrix of order {a.shape[0]}")
    if abs(np.linalg.norm(x) - 1.0) > 1e-10:
        raise NotUnit(f"||x|| = {np.linalg.norm(x)!r}")
    return complex(np.vdot(x, a @ x))


def direct_sum(*blocks) -> ComplexMatrix:
    mats = [as_square(b) for b in blocks]
    n = sum(m.shape[0] for m in mats)
    out = np.zeros((n, n), dtype=np.complex128)
    i = 0
    for m in mats:
        j = i + m.shape[0]
        out[i:j, i:j] = m
        i = j
    return out
