"""Command-line entry point.

Exit codes: 0 success, 1 a validation criterion failed, 2 bad input,
3 geometry error (point not interior, degenerate geometry), 4 solver failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from .domains_nd import Ball, Planar, bound_report_nd
from .errors import (
    BranchViolation, DegenerateGeometry, EmptyErosion, InfeasibleLevelSet, KobaError,
    NotInterior, SolverDiverged, SpecError, ZeroDirection,
)
from .inscribed import max_disk_radius_through
from .schwarz_lab import lens_params, regime_scan, run_lens_experiment
from .specfile import DomainSpec, load_spec

EXIT_INPUT, EXIT_GEOMETRY, EXIT_SOLVER = 2, 3, 4


class InputError(KobaError):
    pass


def fmt(x: float) -> str:
    return format(float(x), ".9g")


def _round(x):
    return None if x is None else float(fmt(x))


def _pair(z: complex) -> list[float]:
    return [_round(z.real), _round(z.imag)]


def parse_vector(text: str, dim: int) -> np.ndarray:
    """``dim`` complex literals, or ``2*dim`` numbers read as (re, im) pairs."""
    tokens = [t.strip() for t in text.split(",") if t.strip()]
    try:
        if len(tokens) == dim:
            vals = [complex(t.replace("i", "j")) for t in tokens]
        elif len(tokens) == 2 * dim:
            nums = [float(t) for t in tokens]
            vals = [complex(a, b) for a, b in zip(nums[::2], nums[1::2])]
        else:
            raise InputError(f"expected {dim} complex or {2 * dim} real values, got {len(tokens)}")
    except ValueError as exc:
        raise InputError(f"cannot parse {text!r}: {exc}") from exc
    return np.asarray(vals, dtype=complex)


def _read_spec(path: str) -> DomainSpec:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        return load_spec(text)
    except SpecError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _dim(domain) -> int:
    return domain.dim


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_bounds(args) -> int:
    spec = _read_spec(args.spec)
    domain = spec.build()
    n = _dim(domain)
    p, xi = parse_vector(args.point, n), parse_vector(args.dir, n)
    if not np.any(xi):
        raise InputError("direction must be nonzero")
    rep = bound_report_nd(domain, p if n > 1 else p[0], xi if n > 1 else xi[0])
    doc = {"domain": spec.to_document(), "point": [_pair(z) for z in p], "direction": [_pair(z) for z in xi]}
    for key, val in rep.to_dict().items():
        doc[key] = val if key == "regime" else _round(val)
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return 0


def cmd_inscribed(args) -> int:
    spec = _read_spec(args.spec)
    domain = spec.build()
    if not isinstance(domain, Planar):
        raise InputError("inscribed needs a planar domain")
    (p,) = parse_vector(args.point, 1)
    sol = max_disk_radius_through(domain.region, complex(p))
    doc = {"domain": spec.to_document(), "point": _pair(complex(p)),
           "r": _round(domain.region.boundary_distance(complex(p))), "r_hat": _round(sol.r_hat),
           "q": _pair(sol.q), "dist_pq": _round(sol.dist_pq)}
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return 0


def cmd_lens(args) -> int:
    if not 0 < args.h < 1:
        raise InputError(f"--h must lie in (0, 1), got {args.h}")
    lens = lens_params(args.h)
    if not 0 < args.tmin < args.tmax < lens.c:
        raise InputError(f"need 0 < tmin < tmax < c = {lens.c:.9g}, got [{args.tmin}, {args.tmax}]")
    if args.steps < 5:
        raise InputError("--steps must be at least 5")
    if args.samples < 2:
        raise InputError("--samples must be at least 2")
    ts = np.geomspace(args.tmin, args.tmax, args.steps)
    series = run_lens_experiment(args.h, ts, args.samples)
    rows = [[fmt(r.t), fmt(r.d_t), fmt(r.dprime_t), fmt(r.empirical_image_dist), fmt(r.bg_bound)]
            for r in series.rows]
    text = _csv(["t", "d", "dprime", "empirical", "bg_bound"], rows)
    text += f"# alpha_hat={fmt(series.fitted_alpha)},C_hat={fmt(series.fitted_C)}\n"
    _emit(text, args.out)
    return 0


def cmd_scan(args) -> int:
    spec = _read_spec(args.spec)
    domain = spec.build()
    if not isinstance(domain, Planar):
        raise InputError("scan needs a planar domain")
    if args.grid < 1:
        raise InputError("--grid must be positive")
    window = None
    if args.window:
        try:
            window = tuple(float(v) for v in args.window.split(","))
        except ValueError as exc:
            raise InputError(f"--window: {exc}") from exc
        if len(window) != 4 or not (window[0] < window[1] and window[2] < window[3]):
            raise InputError("--window must be xmin,xmax,ymin,ymax with xmin<xmax, ymin<ymax")
    rows = [[fmt(x), fmt(y), rep.regime.value, fmt(rep.improved_upper), fmt(rep.graham_upper)]
            for x, y, rep in regime_scan(domain.region, args.grid, window)]
    _emit(_csv(["x", "y", "regime", "improved_upper", "graham_upper"], rows), args.out)
    return 0


def cmd_validate(args) -> int:
    from .validation import CRITERIA

    ok = True
    for check in CRITERIA:
        res = check()
        print(res.line(), flush=True)
        ok &= res.passed
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="koba", description="Kobayashi metric bounds from planar slice geometry.")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bounds", help="metric bound report at a point and direction")
    b.add_argument("--spec", required=True)
    b.add_argument("--point", required=True)
    b.add_argument("--dir", required=True)
    b.add_argument("--out")
    b.set_defaults(func=cmd_bounds)

    s = sub.add_parser("inscribed", help="largest disk through a point of a planar domain")
    s.add_argument("--spec", required=True)
    s.add_argument("--point", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_inscribed)

    le = sub.add_parser("lens", help="lens decay experiment (CSV)")
    le.add_argument("--h", type=float, required=True)
    le.add_argument("--tmin", type=float, default=1e-4)
    le.add_argument("--tmax", type=float, default=1e-2)
    le.add_argument("--steps", type=int, default=20)
    le.add_argument("--samples", type=int, default=10_000)
    le.add_argument("--out")
    le.set_defaults(func=cmd_lens)

    sc = sub.add_parser("scan", help="regime scan over a planar domain (CSV)")
    sc.add_argument("--spec", required=True)
    sc.add_argument("--grid", type=int, required=True)
    sc.add_argument("--window")
    sc.add_argument("--out")
    sc.set_defaults(func=cmd_scan)

    v = sub.add_parser("validate", help="run the acceptance checks")
    v.set_defaults(func=cmd_validate)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, SpecError, ZeroDirection) as exc:
        print(f"koba: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (NotInterior, DegenerateGeometry, EmptyErosion, BranchViolation, InfeasibleLevelSet) as exc:
        print(f"koba: geometry error: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY
    except SolverDiverged as exc:
        print(f"koba: solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
