"""Contact points of ``F(A_(k))`` with the sides of the spectral polygon.

For a normal ``A = U diag(lambda) U*`` and adjacent hull vertices
``lambda_i, lambda_j`` with unit eigenvectors ``v, w``, a unit vector ``u``
in ``span(v, w)`` with ``u_k = 0`` is built explicitly. Its Rayleigh
quotient ``alpha^2 lambda_i + beta^2 lambda_j`` lies on the side
``[lambda_i, lambda_j]`` and, since ``u_k = 0``, equals ``x* A_(k) x`` for
``x = u`` with entry ``k`` removed. If ``v_k`` or ``w_k`` already vanishes
the corresponding vertex (or the whole side) is reached directly.

Non-normal convexoid matrices have no usable eigenbasis here; for them
:func:`verify_only_inscription` locates contacts through the support
function of ``A_(k)`` along each side's outward normal.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .convexoid import eigen_decompose_normal
from .errors import MidpointAssertionFailed, NotOrthogonal, NotUnit
from .fov import DEFAULT_ANGLES, angle_grid, hull_support_values, support, support_values, within_support
from .linalg import (
    ComplexVector,
    as_square,
    as_vector,
    dft_matrix,
    is_zero_component,
    phase_normalize,
    principal_submatrix,
    project_down,
    rayleigh,
    scale,
)
from .polygon import Segment, SpectralPolygon, convex_hull, point_on_segment

_PAIR_TOL = 1e-8


class CaseTag(str, enum.Enum):
    VERTEX_I = "VERTEX_I"
    VERTEX_J = "VERTEX_J"
    FULL_EDGE = "FULL_EDGE"
    INTERIOR = "INTERIOR"
    # contact found by a support sweep (non-normal convexoid input)
    SUPPORT = "SUPPORT"


@dataclass(frozen=True)
class EdgeContact:
    """One point of ``F(A_(k))`` on the side ``edge = (i, j)`` (1-based eigen-indices).

    ``witness`` is the unit vector ``x`` of length ``n - 1`` with
    ``x* A_(k) x == contact_point``. ``alpha_sq``/``beta_sq`` are set only for
    INTERIOR contacts; a FULL_EDGE contact reports the side's midpoint as a
    representative of the whole side.
    """

    edge: tuple[int, int]
    case_tag: CaseTag
    contact_point: complex
    alpha_sq: float | None
    beta_sq: float | None
    witness: ComplexVector
    note: str = ""


@dataclass(frozen=True)
class TangencyReport:
    k: int
    polygon: SpectralPolygon
    contacts: tuple[EdgeContact, ...]
    all_verified: bool
    notes: tuple[str, ...] = field(default=())
    mode: str = "constructive"


def interior_combination(v, w, k: int, sign: int = 1):
    """Return ``(alpha, beta, u)`` with ``u = alpha v' + beta w'`` and ``u_k = 0``.

    ``v'`` and ``w'`` are ``v`` and ``w`` rotated so their ``k``-th entries are
    positive. ``sign=1`` picks ``alpha < 0 < beta``; ``sign=-1`` the mirror.
    """
    v = phase_normalize(v, k)
    w = phase_normalize(w, k)
    vk, wk = v[k - 1].real, w[k - 1].real
    r = math.hypot(vk, wk)
    alpha = -sign * wk / r
    beta = sign * vk / r
    return alpha, beta, alpha * v + beta * w


def _check_pair(v: ComplexVector, w: ComplexVector) -> None:
    if v.size != w.size:
        raise NotOrthogonal("eigenvectors have different lengths")
    for name, x in (("v", v), ("w", w)):
        if abs(np.linalg.norm(x) - 1.0) > _PAIR_TOL:
            raise NotUnit(f"{name} is not a unit vector")
    if abs(np.vdot(v, w)) > _PAIR_TOL:
        raise NotOrthogonal(f"|v* w| = {abs(np.vdot(v, w)):.3g}")


def contact_point(v, w, lambda_i: complex, lambda_j: complex, k: int,
                  edge: tuple[int, int] = (0, 0)) -> EdgeContact:
    """Constructive contact of ``F(A_(k))`` with ``[lambda_i, lambda_j]``.

    ``v`` and ``w`` are orthonormal eigenvectors for ``lambda_i`` and
    ``lambda_j``. Components below ``1e-12`` times the vector norm count as
    zero when choosing between the vertex/full-side cases and the interior
    construction.
    """
    v, w = as_vector(v), as_vector(w)
    _check_pair(v, w)
    lambda_i, lambda_j = complex(lambda_i), complex(lambda_j)
    v_zero, w_zero = is_zero_component(v, k), is_zero_component(w, k)
    if v_zero and w_zero:
        x = project_down((v + w) / math.sqrt(2.0), k)
        return EdgeContact(edge, CaseTag.FULL_EDGE, (lambda_i + lambda_j) / 2, None, None, x)
    if v_zero:
        return EdgeContact(edge, CaseTag.VERTEX_I, lambda_i, None, None, project_down(v, k))
    if w_zero:
        return EdgeContact(edge, CaseTag.VERTEX_J, lambda_j, None, None, project_down(w, k))
    alpha, beta, u = interior_combination(v, w, k)
    a2, b2 = alpha * alpha, beta * beta
    return EdgeContact(
        edge, CaseTag.INTERIOR, a2 * lambda_i + b2 * lambda_j, a2, b2, project_down(u, k)
    )


def sign_invariance_check(v, w, lambda_i: complex, lambda_j: complex, k: int) -> bool:
    """Both sign choices for ``(alpha, beta)`` give the same contact point."""
    a1, b1, _ = interior_combination(v, w, k, sign=1)
    a2, b2, _ = interior_combination(v, w, k, sign=-1)
    p1 = a1 * a1 * lambda_i + b1 * b1 * lambda_j
    p2 = a2 * a2 * lambda_i + b2 * b2 * lambda_j
    return abs(p1 - p2) <= 1e-12 * (1.0 + abs(lambda_i) + abs(lambda_j))


def _vertex_eigenvector(lam, u, index: int, k: int, tol: float):
    """Unit eigenvector for ``lam[index]`` with the smallest ``k``-th entry.

    Within a multi-dimensional eigenspace a combination with zero ``k``-th
    entry always exists, which turns the side into a vertex contact.
    """
    members = np.flatnonzero(np.abs(lam - lam[index]) <= tol)
    if members.size == 1:
        return u[:, index], ""
    basis = u[:, members]
    row = basis[k - 1, :]
    if np.linalg.norm(row) == 0.0:
        vec = basis[:, 0]
    else:
        vh = np.linalg.svd(row[None, :])[2]
        vec = basis @ vh[1].conj()
    vec = vec / np.linalg.norm(vec)
    return vec, f"eigenvalue {index + 1} has multiplicity {members.size}"


def inscribe(a, k: int, tol: float = 1e-8, n_angles: int = DEFAULT_ANGLES,
             normal_tol: float = 1e-10) -> TangencyReport:
    """Contact points of ``F(A_(k))`` with every side of ``co(sigma(A))``.

    Requires ``A`` normal (``NotNormal`` otherwise). The returned report is
    checked with :func:`verify_inscription` at relative tolerance ``tol``.
    """
    a = as_square(a)
    lam, u = eigen_decompose_normal(a, normal_tol)
    principal_submatrix(a, k)  # validates k and n >= 2
    poly = convex_hull(lam)
    notes: list[str] = []
    contacts = []
    if poly.d == 1:
        notes.append("single-point polygon: no sides")
    elif poly.d == 2:
        notes.append("two-vertex polygon: both directed sides coincide geometrically")
    space_tol = 1e-9 * poly.scale
    for edge in poly.edges:
        v, note_v = _vertex_eigenvector(lam, u, edge.i - 1, k, space_tol)
        w, note_w = _vertex_eigenvector(lam, u, edge.j - 1, k, space_tol)
        c = contact_point(v, w, lam[edge.i - 1], lam[edge.j - 1], k, edge=(edge.i, edge.j))
        note = "; ".join(s for s in (note_v, note_w) if s)
        contacts.append(replace(c, note=note) if note else c)
    report = TangencyReport(k, poly, tuple(contacts), False, tuple(notes))
    return replace(report, all_verified=verify_inscription(a, k, report, n_angles, tol))


def dft_inscribe(eigenvalues, k: int, tol: float = 1e-8,
                 n_angles: int = DEFAULT_ANGLES) -> TangencyReport:
    """:func:`inscribe` for ``A = F diag(eigenvalues) F*`` with ``F`` the DFT matrix.

    Every INTERIOR contact must sit at its side's midpoint to within
    ``1e-9 (1 + ||A||_F)``; otherwise :class:`MidpointAssertionFailed`.
    """
    a = dft_construct(eigenvalues)
    report = inscribe(a, k, tol=tol, n_angles=n_angles)
    limit = 1e-9 * scale(a)
    for c, e in zip(report.contacts, report.polygon.edges):
        if c.case_tag is CaseTag.INTERIOR and abs(c.contact_point - e.midpoint) > limit:
            raise MidpointAssertionFailed(
                f"contact {c.contact_point!r} on side {c.edge} misses midpoint {e.midpoint!r}"
            )
    return report


def dft_construct(eigenvalues):
    lam = as_vector(eigenvalues)
    f = dft_matrix(lam.size)
    return (f * lam) @ f.conj().T


def _outward_normal_angle(seg: Segment) -> float:
    return cmath.phase(-1j * (seg.b - seg.a))


def verify_only_inscription(a, eigenvalues, k: int, tol: float = 1e-8,
                            n_angles: int = DEFAULT_ANGLES) -> TangencyReport:
    """Contacts for a (possibly non-normal) convexoid ``A`` via support sweeps.

    For every side the top eigenvector of the rotated Hermitian part of
    ``A_(k)`` along the side's outward normal gives the candidate contact.
    The report is then checked by :func:`verify_inscription`, which fails
    if ``F(A_(k))`` falls short of some side.
    """
    a = as_square(a)
    ak = principal_submatrix(a, k)
    poly = convex_hull(eigenvalues)
    contacts = []
    for edge in poly.edges:
        s = support(ak, _outward_normal_angle(edge))
        contacts.append(
            EdgeContact((edge.i, edge.j), CaseTag.SUPPORT, s.boundary_point, None, None, s.witness)
        )
    notes = ("single-point polygon: no sides",) if poly.d == 1 else ()
    report = TangencyReport(k, poly, tuple(contacts), False, notes, mode="support")
    return replace(report, all_verified=verify_inscription(a, k, report, n_angles, tol))


def verify_inscription(a, k: int, report: TangencyReport, n_angles: int = DEFAULT_ANGLES,
                       tol: float = 1e-8) -> bool:
    """Independent re-check of a report against ``A``.

    With ``t = tol (1 + ||A||_F)``, requires: one contact per polygon side
    in order; each contact within ``t`` of its side; ``x* A_(k) x`` within
    ``t`` of the contact for the stored witness; the contact inside
    ``F(A_(k))`` by the outer support test; ``h_A(k) <= h_A + t`` on the grid;
    and the polygon's support function matching ``h_A`` to ``t``, i.e. the
    sides really bound ``F(A)``.
    """
    a = as_square(a)
    if report.k != k:
        return False
    ak = principal_submatrix(a, k)
    t = tol * scale(a)
    edges = report.polygon.edges
    if len(report.contacts) != len(edges):
        return False
    thetas = angle_grid(n_angles)
    hk = support_values(ak, thetas)
    for c, e in zip(report.contacts, edges):
        if tuple(c.edge) != (e.i, e.j):
            return False
        if not point_on_segment(c.contact_point, e, t):
            return False
        try:
            value = rayleigh(ak, c.witness)
        except (NotUnit, ValueError):
            return False
        if abs(value - c.contact_point) > t:
            return False
    if not np.all(within_support(hk + t, thetas, [c.contact_point for c in report.contacts])):
        return False
    h = support_values(a, thetas)
    if np.any(hk > h + t):
        return False
    return bool(np.all(np.abs(hull_support_values(report.polygon.vertices, thetas) - h) <= t))
