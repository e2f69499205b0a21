"""Convex hull of a spectrum and the segment geometry around it."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from .errors import Degenerate, EmptyInput


@dataclass(frozen=True)
class Segment:
    """Closed segment from ``a`` to ``b``; ``i`` and ``j`` are 1-based eigen-indices."""

    a: complex
    b: complex
    i: int
    j: int

    @property
    def midpoint(self) -> complex:
        return (self.a + self.b) / 2


@dataclass(frozen=True)
class SpectralPolygon:
    """Counterclockwise strict hull ``co(eigenvalues)``.

    ``vertex_eigenindex[m]`` is a 1-based position in ``eigenvalues`` whose
    value is vertex ``m``. With a single vertex there are no edges; with two
    vertices both directed edges ``(v0, v1)`` and ``(v1, v0)`` are kept.
    """

    vertices: tuple[complex, ...]
    vertex_eigenindex: tuple[int, ...]
    eigenvalues: tuple[complex, ...]

    @property
    def d(self) -> int:
        return len(self.vertices)

    @property
    def edges(self) -> list[Segment]:
        if self.d == 1:
            return []
        out = []
        for m in range(self.d):
            nxt = (m + 1) % self.d
            out.append(
                Segment(
                    self.vertices[m],
                    self.vertices[nxt],
                    self.vertex_eigenindex[m],
                    self.vertex_eigenindex[nxt],
                )
            )
        return out

    @property
    def scale(self) -> float:
        return 1.0 + max(abs(z) for z in self.eigenvalues)


def _cross(o: complex, a: complex, b: complex) -> float:
    return ((a - o).conjugate() * (b - o)).imag


def _segment_distance(z: complex, a: complex, b: complex) -> float:
    ab = b - a
    den = abs(ab) ** 2
    if den == 0.0:
        return abs(z - a)
    t = min(max(((z - a).conjugate() * ab).real / den, 0.0), 1.0)
    return abs(z - (a + t * ab))


def convex_hull(points, collapse_tol: float | None = None) -> SpectralPolygon:
    """Counterclockwise strict convex hull by Andrew's monotone chain.

    Points closer than ``collapse_tol`` (default ``1e-9 (1 + max|z|)``) are
    merged. The chain itself uses exact orientation signs; afterwards any
    vertex within ``collapse_tol`` of the segment joining its neighbours is
    dropped, so every reported vertex is a strict extreme point. The first
    vertex is the one with the smallest polar angle in ``[0, 2 pi)`` about
    the vertex centroid.
    """
    pts = [complex(z) for z in np.atleast_1d(np.asarray(points, dtype=np.complex128))]
    if not pts:
        raise EmptyInput("no points")
    tol = 1e-9 * (1.0 + max(abs(z) for z in pts)) if collapse_tol is None else collapse_tol

    reps: list[tuple[complex, int]] = []
    for idx, z in enumerate(pts, start=1):
        if all(abs(z - r) > tol for r, _ in reps):
            reps.append((z, idx))

    if len(reps) == 1:
        return SpectralPolygon((reps[0][0],), (reps[0][1],), tuple(pts))

    reps.sort(key=lambda t: (t[0].real, t[0].imag))

    def chain(seq):
        h: list[tuple[complex, int]] = []
        for p in seq:
            while len(h) >= 2 and _cross(h[-2][0], h[-1][0], p[0]) <= 0.0:
                h.pop()
            h.append(p)
        return h

    lower = chain(reps)
    upper = chain(reversed(reps))
    hull = lower[:-1] + upper[:-1]

    changed = len(hull) > 2
    while changed and len(hull) > 2:
        changed = False
        for m in range(len(hull)):
            prev, cur, nxt = hull[m - 1], hull[m], hull[(m + 1) % len(hull)]
            if _segment_distance(cur[0], prev[0], nxt[0]) <= tol:
                del hull[m]
                changed = True
                break

    centroid = sum(z for z, _ in hull) / len(hull)
    angles = [math.atan2((z - centroid).imag, (z - centroid).real) % (2 * math.pi) for z, _ in hull]
    start = min(range(len(hull)), key=lambda m: angles[m])
    hull = hull[start:] + hull[:start]
    return SpectralPolygon(
        tuple(z for z, _ in hull), tuple(i for _, i in hull), tuple(pts)
    )


def edge_midpoints(poly: SpectralPolygon) -> list[complex]:
    if poly.d < 2:
        raise Degenerate("a single-point polygon has no edges")
    return [e.midpoint for e in poly.edges]


def point_on_segment(z: complex, seg: Segment, tol: float) -> bool:
    return _segment_distance(complex(z), seg.a, seg.b) <= tol


def adjacent_vertex_pairs(poly: SpectralPolygon) -> list[tuple[int, int]]:
    """1-based eigen-index pairs ``(i, j)`` of each edge, in boundary order."""
    if poly.d < 2:
        raise Degenerate("a single-point polygon has no edges")
    return [(e.i, e.j) for e in poly.edges]


def distance_to_boundary(poly: SpectralPolygon, z: complex) -> float:
    """Distance from ``z`` to the polygon's boundary curve."""
    z = complex(z)
    if poly.d == 1:
        return abs(z - poly.vertices[0])
    return min(_segment_distance(z, e.a, e.b) for e in poly.edges)


def contains_point(poly: SpectralPolygon, z: complex, tol: float) -> bool:
    """Whether ``z`` is inside the closed polygon or within ``tol`` of it."""
    z = complex(z)
    if poly.d <= 2:
        return distance_to_boundary(poly, z) <= tol
    inside = all(
        _cross(e.a, e.b, z) >= -tol * abs(e.b - e.a) for e in poly.edges
    )
    return inside or distance_to_boundary(poly, z) <= tol


def vertex_array(poly: SpectralPolygon) -> npt.NDArray[np.complex128]:
    return np.array(poly.vertices, dtype=np.complex128)
