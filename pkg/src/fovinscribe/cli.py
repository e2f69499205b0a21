"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 numerical failure (matrix not normal, solver did not converge).
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

import numpy as np

from . import io
from .convexoid import eigen_decompose_normal, is_convexoid_numeric
from .errors import FovError, IndexOutOfRange, InputError, MidpointAssertionFailed, NotNormal, NumericalError, TooSmall
from .fov import DEFAULT_ANGLES, boundary
from .inscription import dft_construct, dft_inscribe, inscribe, verify_inscription, verify_only_inscription
from .linalg import is_normal, principal_submatrix
from .polygon import convex_hull

_NUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_REAL = re.compile(rf"[+-]?{_NUM}")
_IMAG = re.compile(rf"([+-]?)({_NUM})?i")
_FULL = re.compile(rf"([+-]?{_NUM})([+-])({_NUM})?i")


def parse_complex(text: str) -> complex:
    """Parse ``a+bi``, ``a-bi``, ``a`` or ``bi`` (whitespace ignored)."""
    s = re.sub(r"\s+", "", text)
    if _REAL.fullmatch(s):
        return complex(float(s), 0.0)
    m = _IMAG.fullmatch(s)
    if m:
        mag = float(m.group(2)) if m.group(2) else 1.0
        return complex(0.0, -mag if m.group(1) == "-" else mag)
    m = _FULL.fullmatch(s)
    if m:
        mag = float(m.group(3)) if m.group(3) else 1.0
        return complex(float(m.group(1)), -mag if m.group(2) == "-" else mag)
    raise InputError(f"cannot parse complex number {text!r}")


def parse_complex_list(text: str) -> list[complex]:
    return [parse_complex(part) for part in text.split(",")]


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _spectrum(a) -> np.ndarray:
    if is_normal(a):
        return eigen_decompose_normal(a)[0]
    # only used to locate the hull for non-normal input
    return np.linalg.eigvals(a)


def _svg_path(base: str, k: int, many: bool) -> Path:
    p = Path(base)
    return p.with_name(f"{p.stem}_k{k}{p.suffix or '.svg'}") if many else p


def _inscription_run(a, args, use_dft: bool = False, eigs=None) -> int:
    n = a.shape[0]
    if n < 2:
        raise TooSmall("need n >= 2")
    if args.k is not None and not 1 <= args.k <= n:
        raise IndexOutOfRange(f"--k {args.k} outside 1..{n}")
    ks = [args.k] if args.k is not None else list(range(1, n + 1))
    spectrum = _spectrum(a)
    verdict = is_convexoid_numeric(a, spectrum, max(args.angles, 90))
    if use_dft:
        reports = [dft_inscribe(eigs, k, tol=args.tol, n_angles=args.angles) for k in ks]
    elif verdict.is_normal:
        reports = [inscribe(a, k, tol=args.tol, n_angles=args.angles) for k in ks]
    elif verdict.is_convexoid:
        reports = [verify_only_inscription(a, spectrum, k, tol=args.tol, n_angles=args.angles) for k in ks]
    else:
        raise NotNormal("matrix is not normal and not numerically convexoid")

    doc = io.report_document(a, reports, verdict, boundary(a, args.angles))
    text = io.dumps(doc)
    if args.json:
        _emit(text, args.json)
        for r in reports:
            print(f"k={r.k} contacts={len(r.contacts)} verified={r.all_verified}")
    else:
        _emit(text, None)
    if args.svg:
        for r in reports:
            sub = boundary(principal_submatrix(a, r.k), args.angles)
            io.emit_svg(r.polygon, sub, r.contacts, _svg_path(args.svg, r.k, len(reports) > 1),
                        title=f"F(A_({r.k})) inside co(sigma(A))")
    return 0 if all(r.all_verified for r in reports) else 1


def cmd_boundary(args) -> int:
    a = io.parse_matrix(args.matrix)
    b = boundary(a, args.angles)
    _emit(io.boundary_csv(b) if args.format == "csv" else io.dumps(io.boundary_to_dict(b)), args.output)
    return 0


def cmd_polygon(args) -> int:
    a = io.parse_matrix(args.matrix)
    lam, _ = eigen_decompose_normal(a)
    poly = convex_hull(lam)
    doc = {"eigenvalues": [io.complex_to_pair(z) for z in lam], "polygon": io.polygon_to_dict(poly)}
    _emit(io.dumps(doc), args.output)
    return 0


def cmd_convexoid(args) -> int:
    a = io.parse_matrix(args.matrix)
    verdict = is_convexoid_numeric(a, _spectrum(a), args.angles, args.tol)
    _emit(io.dumps(io.verdict_to_dict(verdict)), args.output)
    return 0


def cmd_inscribe(args) -> int:
    return _inscription_run(io.parse_matrix(args.matrix), args)


def cmd_dft(args) -> int:
    eigs = parse_complex_list(args.eigs)
    return _inscription_run(dft_construct(eigs), args, use_dft=True, eigs=eigs)


def cmd_verify(args) -> int:
    a, reports, doc = io.read_report(args.report)
    if io.matrix_digest(a) != doc.get("input_digest"):
        print("embedded matrix does not match the report digest", file=sys.stderr)
        return 1
    if args.matrix is not None:
        other = io.parse_matrix(args.matrix)
        if io.matrix_digest(other) != doc.get("input_digest"):
            print("matrix file does not match the report digest", file=sys.stderr)
            return 1
    ok = True
    for r in reports:
        good = verify_inscription(a, r.k, r, args.angles, args.tol)
        print(f"k={r.k} verified={good}")
        ok = ok and good
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fovinscribe",
        description="Fields of values, convexoid tests and inscribed principal submatrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def angles(p):
        p.add_argument("--angles", type=int, default=DEFAULT_ANGLES, help="angle grid size (default 360)")

    p = sub.add_parser("boundary", help="support-function samples of F(A)")
    p.add_argument("matrix")
    angles(p)
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--output")
    p.set_defaults(func=cmd_boundary)

    p = sub.add_parser("polygon", help="eigenvalues and spectral polygon of a normal matrix")
    p.add_argument("matrix")
    p.add_argument("--output")
    p.set_defaults(func=cmd_polygon)

    p = sub.add_parser("convexoid", help="numeric convexoid verdict")
    p.add_argument("matrix")
    angles(p)
    p.add_argument("--tol", type=float, default=None, help="absolute gap tolerance (default 1e-8 (1+||A||_F))")
    p.add_argument("--output")
    p.set_defaults(func=cmd_convexoid)

    for name, func in (("inscribe", cmd_inscribe), ("dft", cmd_dft)):
        p = sub.add_parser(name, help="contact points of F(A_(k)) with the sides of co(sigma(A))")
        if name == "inscribe":
            p.add_argument("matrix")
        else:
            p.add_argument("--eigs", required=True, help='comma separated, e.g. "0,1,0+1i"')
        p.add_argument("--k", type=int, default=None, help="deletion index (default: all)")
        angles(p)
        p.add_argument("--tol", type=float, default=1e-8, help="relative verification tolerance")
        p.add_argument("--json", help="write the report here instead of stdout")
        p.add_argument("--svg", help="write a figure (one per k, suffixed, when --k is absent)")
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="re-check a saved report")
    p.add_argument("report")
    p.add_argument("--matrix", help="matrix file expected to match the report digest")
    angles(p)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_verify)
    return parser


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except MidpointAssertionFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except (InputError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except FovError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli())
