"""Matrix and report files (JSON) and SVG figures.

Matrix file::

    {"n": 2, "entries": [[[re, im], [re, im]], [[re, im], [re, im]]]}

Floats are written with 17 significant digits so every double survives a
write/read cycle unchanged. Output is byte-deterministic for identical
inputs.
"""

from __future__ import annotations

import hashlib
import html
import json
import math
import os
from numbers import Real

import numpy as np

from .convexoid import ConvexoidVerdict
from .errors import ParseError, ShapeError
from .fov import FovBoundary
from .inscription import CaseTag, EdgeContact, TangencyReport
from .linalg import ComplexMatrix, as_square
from .polygon import SpectralPolygon

REPORT_FORMAT = "fovinscribe-report/1"
_INLINE_WIDTH = 100


# -- JSON writing -------------------------------------------------------------

def _num(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialise non-finite value {x!r}")
    return format(x, ".17g")


def _compact(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_compact(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_compact(v) for v in obj) + "]"
    return _num(obj)


def _pretty(obj, indent: int) -> str:
    flat = _compact(obj)
    if len(flat) + indent <= _INLINE_WIDTH or not isinstance(obj, (dict, list, tuple)) or not obj:
        return flat
    pad = " " * (indent + 2)
    if isinstance(obj, dict):
        items = [f"{pad}{json.dumps(k)}: {_pretty(v, indent + 2)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + " " * indent + "}"
    items = [pad + _pretty(v, indent + 2) for v in obj]
    return "[\n" + ",\n".join(items) + "\n" + " " * indent + "]"


def dumps(obj) -> str:
    """Deterministic JSON text with 17-significant-digit floats."""
    return _pretty(obj, 0) + "\n"


def _reject_constant(name):
    raise ValueError(f"non-finite literal {name} not allowed")


def loads(text: str):
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _read_text(source) -> str:
    if hasattr(source, "read"):
        return source.read()
    with open(os.fspath(source), encoding="utf-8") as fh:
        return fh.read()


# -- complex numbers and matrices --------------------------------------------

def complex_to_pair(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def pair_to_complex(p, where: str = "value") -> complex:
    if (
        not isinstance(p, list)
        or len(p) != 2
        or not all(isinstance(x, Real) and not isinstance(x, bool) for x in p)
    ):
        raise ShapeError(f"{where}: expected [re, im], got {p!r}")
    return complex(float(p[0]), float(p[1]))


def matrix_to_dict(a) -> dict:
    a = as_square(a)
    return {"n": a.shape[0], "entries": [[complex_to_pair(z) for z in row] for row in a]}


def matrix_from_dict(doc) -> ComplexMatrix:
    if not isinstance(doc, dict) or "n" not in doc or "entries" not in doc:
        raise ShapeError("matrix document needs fields 'n' and 'entries'")
    n, rows = doc["n"], doc["entries"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ShapeError(f"'n' must be a positive integer, got {n!r}")
    if not isinstance(rows, list) or len(rows) != n:
        raise ShapeError(f"expected {n} rows")
    out = np.empty((n, n), dtype=np.complex128)
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ShapeError(f"row {r + 1} has {len(row) if isinstance(row, list) else '?'} entries, expected {n}")
        for c, p in enumerate(row):
            out[r, c] = pair_to_complex(p, f"entry ({r + 1}, {c + 1})")
    return out


def parse_matrix(source) -> ComplexMatrix:
    """Read a matrix file from a path or a text stream."""
    return matrix_from_dict(loads(_read_text(source)))


def serialize_matrix(a) -> str:
    return dumps(matrix_to_dict(a))


def write_matrix(a, path) -> None:
    with open(os.fspath(path), "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize_matrix(a))


def matrix_digest(a) -> str:
    text = _compact(matrix_to_dict(a))
    return "sha256:" + hashlib.sha256(text.encode("utf-8")).hexdigest()


# -- reports ------------------------------------------------------------------

def polygon_to_dict(poly: SpectralPolygon) -> dict:
    return {
        "vertices": [complex_to_pair(z) for z in poly.vertices],
        "vertex_eigenindex": list(poly.vertex_eigenindex),
        "eigenvalues": [complex_to_pair(z) for z in poly.eigenvalues],
        "edges": [[e.i, e.j] for e in poly.edges],
        "midpoints": [complex_to_pair(e.midpoint) for e in poly.edges],
    }


def polygon_from_dict(doc) -> SpectralPolygon:
    try:
        return SpectralPolygon(
            tuple(pair_to_complex(p) for p in doc["vertices"]),
            tuple(int(i) for i in doc["vertex_eigenindex"]),
            tuple(pair_to_complex(p) for p in doc["eigenvalues"]),
        )
    except (KeyError, TypeError) as exc:
        raise ShapeError(f"malformed polygon: {exc}") from None


def contact_to_dict(c: EdgeContact) -> dict:
    return {
        "edge": list(c.edge),
        "case": c.case_tag.value,
        "point": complex_to_pair(c.contact_point),
        "alpha_sq": None if c.alpha_sq is None else float(c.alpha_sq),
        "beta_sq": None if c.beta_sq is None else float(c.beta_sq),
        "witness": [complex_to_pair(z) for z in c.witness],
        "note": c.note,
    }


def contact_from_dict(doc) -> EdgeContact:
    try:
        return EdgeContact(
            edge=(int(doc["edge"][0]), int(doc["edge"][1])),
            case_tag=CaseTag(doc["case"]),
            contact_point=pair_to_complex(doc["point"]),
            alpha_sq=None if doc["alpha_sq"] is None else float(doc["alpha_sq"]),
            beta_sq=None if doc["beta_sq"] is None else float(doc["beta_sq"]),
            witness=np.array([pair_to_complex(p) for p in doc["witness"]], dtype=np.complex128),
            note=doc.get("note", ""),
        )
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        raise ShapeError(f"malformed contact: {exc}") from None


def tangency_to_dict(r: TangencyReport) -> dict:
    return {
        "k": r.k,
        "mode": r.mode,
        "all_verified": bool(r.all_verified),
        "notes": list(r.notes),
        "contacts": [contact_to_dict(c) for c in r.contacts],
    }


def tangency_from_dict(doc, polygon: SpectralPolygon) -> TangencyReport:
    try:
        return TangencyReport(
            k=int(doc["k"]),
            polygon=polygon,
            contacts=tuple(contact_from_dict(c) for c in doc["contacts"]),
            all_verified=bool(doc["all_verified"]),
            notes=tuple(doc.get("notes", ())),
            mode=doc.get("mode", "constructive"),
        )
    except (KeyError, TypeError) as exc:
        raise ShapeError(f"malformed tangency report: {exc}") from None


def verdict_to_dict(v: ConvexoidVerdict) -> dict:
    return {
        "is_convexoid": v.is_convexoid,
        "max_support_gap": v.max_support_gap,
        "n_angles": v.n_angles,
        "worst_angle": v.worst_angle,
        "is_normal": v.is_normal,
        "tol": v.tol,
    }


def boundary_to_dict(b: FovBoundary) -> dict:
    return {
        "n_angles": len(b),
        "source_dim": b.source_dim,
        "columns": ["theta", "support", "re", "im"],
        "samples": [
            [t, h, p.real, p.imag] for t, h, p in zip(b.thetas, b.supports, b.points)
        ],
    }


def report_document(a, reports, verdict: ConvexoidVerdict | None = None,
                    boundary: FovBoundary | None = None) -> dict:
    """The full report file for ``A`` and its per-``k`` tangency reports."""
    a = as_square(a)
    polygon = reports[0].polygon if reports else None
    doc = {
        "format": REPORT_FORMAT,
        "input_digest": matrix_digest(a),
        "matrix": matrix_to_dict(a),
        "metadata": {
            "n": a.shape[0],
            "is_normal": None if verdict is None else verdict.is_normal,
            "convexoid": None if verdict is None else verdict_to_dict(verdict),
        },
        "polygon": None if polygon is None else polygon_to_dict(polygon),
        "reports": [tangency_to_dict(r) for r in reports],
        "boundary": None if boundary is None else boundary_to_dict(boundary),
    }
    return doc


def read_report(source) -> tuple[ComplexMatrix, list[TangencyReport], dict]:
    """Parse a report file; returns ``(matrix, reports, raw document)``."""
    doc = loads(_read_text(source))
    if not isinstance(doc, dict) or doc.get("format") != REPORT_FORMAT:
        raise ShapeError("not a report file")
    a = matrix_from_dict(doc["matrix"])
    if doc.get("polygon") is None:
        return a, [], doc
    poly = polygon_from_dict(doc["polygon"])
    return a, [tangency_from_dict(r, poly) for r in doc["reports"]], doc


def boundary_csv(b: FovBoundary) -> str:
    lines = ["theta,support,re,im"]
    for t, h, p in zip(b.thetas, b.supports, b.points):
        lines.append(",".join(_num(x) for x in (t, h, p.real, p.imag)))
    return "\n".join(lines) + "\n"


# -- SVG ----------------------------------------------------------------------

def _f(x: float) -> str:
    s = format(float(x), ".8g")
    return "0" if s == "-0" else s


def _path(points) -> str:
    pts = list(points)
    head = f"M {_f(pts[0].real)} {_f(pts[0].imag)}"
    return head + "".join(f" L {_f(p.real)} {_f(p.imag)}" for p in pts[1:]) + " Z"


def _distinct(values, tol):
    out = []
    for idx, z in enumerate(values, start=1):
        if all(abs(z - y) > tol for y, _ in out):
            out.append((z, idx))
    return out


def render_svg(polygon: SpectralPolygon, submatrix_boundary: FovBoundary | None,
               contacts=(), title: str = "") -> str:
    """SVG 1.1 document: spectral polygon, submatrix field, contacts, eigenvalues."""
    tol = 1e-9 * polygon.scale
    eigs = _distinct(polygon.eigenvalues, tol)
    field_pts = [] if submatrix_boundary is None else [complex(p) for p in submatrix_boundary.points]
    if field_pts and max(abs(p - field_pts[0]) for p in field_pts) <= tol:
        field_pts = []
    everything = [z for z, _ in eigs] + field_pts + [complex(c.contact_point) for c in contacts]
    xs = [z.real for z in everything]
    ys = [z.imag for z in everything]
    cx, cy = (max(xs) + min(xs)) / 2, (max(ys) + min(ys)) / 2
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    half = 0.5 * span * 1.1
    r = span / 100
    stroke = span / 400

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="800" height="800" '
        f'viewBox="{_f(cx - half)} {_f(-cy - half)} {_f(2 * half)} {_f(2 * half)}">',
        "<!-- orientation: geometry is drawn in a group flipped by scale(1,-1), "
        "so the imaginary axis points up -->",
    ]
    if title:
        out.append(f"<title>{html.escape(title)}</title>")
    out.append('<g transform="scale(1,-1)">')
    if field_pts:
        out.append(
            f'<path class="field" d="{_path(field_pts)}" fill="#9ecae1" fill-opacity="0.6" '
            f'stroke="#3182bd" stroke-width="{_f(stroke)}"/>'
        )
    if polygon.d >= 2:
        out.append(
            f'<path class="polygon" d="{_path(polygon.vertices)}" fill="none" '
            f'stroke="#000000" stroke-width="{_f(stroke)}"/>'
        )
        for e in polygon.edges[: 1 if polygon.d == 2 else None]:
            m = e.midpoint
            out.append(
                f'<circle class="midpoint" cx="{_f(m.real)}" cy="{_f(m.imag)}" r="{_f(r * 1.6)}" '
                f'fill="none" stroke="#636363" stroke-width="{_f(stroke)}"/>'
            )
    for c in contacts:
        p = complex(c.contact_point)
        out.append(
            f'<circle class="contact" data-case="{c.case_tag.value}" cx="{_f(p.real)}" '
            f'cy="{_f(p.imag)}" r="{_f(r)}" fill="#e6550d"/>'
        )
    for z, _ in eigs:
        out.append(
            f'<circle class="eigenvalue" cx="{_f(z.real)}" cy="{_f(z.imag)}" r="{_f(r)}" fill="#000000"/>'
        )
    out.append("</g>")
    out.append(f'<g class="labels" font-family="sans-serif" font-size="{_f(span / 30)}">')
    for z, idx in eigs:
        out.append(
            f'<text x="{_f(z.real + 1.5 * r)}" y="{_f(-z.imag - 1.5 * r)}">λ{idx}</text>'
        )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(polygon: SpectralPolygon, submatrix_boundary: FovBoundary | None,
             contacts, path, title: str = "") -> None:
    with open(os.fspath(path), "w", encoding="utf-8", newline="\n") as fh:
        fh.write(render_svg(polygon, submatrix_boundary, contacts, title))
