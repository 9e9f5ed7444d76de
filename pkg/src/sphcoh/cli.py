"""Command-line front end: single queries, batch runs, JSON traces and SVG figures."""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, TextIO

from .brillnoether import weak_bn
from .errors import InputError, IoError, NeedsFullLocalReduction, SphcohError
from .filtration import Shape, height
from .mukai import MukaiVector, half_degree
from .reduction import DEFAULT_MAX_WALLS, CohomologyResult, Trace, cohomology

SCHEMA = 1

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NEEDS_FULL = 2


@dataclass(frozen=True)
class QuerySpec:
    command: str
    n: int
    v: Optional[MukaiVector]
    output: str = "human"
    svg_path: Optional[str] = None
    max_walls: int = DEFAULT_MAX_WALLS


def _frac(x: Fraction) -> str:
    return str(Fraction(x))


def _vec(v: MukaiVector) -> list[str]:
    return [str(v.r), str(v.d), str(v.a)]


def shape_json(shape: Shape) -> list[dict]:
    return [
        {"class": _vec(f.cls), "mult": str(f.mult), "label": None if f.label is None else str(f.label)}
        for f in shape
    ]


def trace_json(trace: Trace) -> list[dict]:
    out = []
    for step in trace:
        out.append(
            {
                "wall": {"center": _frac(step.wall.center), "radius_sq": _frac(step.wall.radius_sq)},
                "wall_key": {"t0_sq": _frac(step.wall_key.t0_sq), "c2": _frac(step.wall_key.c2)},
                "lattice": {
                    "s0": _vec(step.lattice.s0),
                    "t1": _vec(step.lattice.t1),
                    "g": str(step.lattice.g),
                },
                "segment_range": list(step.segment_range),
                "rule": step.rule,
                "note": step.note,
                "shape_after": shape_json(step.shape_after),
            }
        )
    return out


def _input_json(n: int, v: MukaiVector) -> dict:
    return {"n": n, "r": str(v.r), "d": str(v.d), "a": str(v.a)}


def cohomology_json(res: CohomologyResult) -> dict:
    w = res.normalized
    h0, h1, h2 = res.input_cohomology
    doc = {
        "schema": SCHEMA,
        "input": _input_json(res.n, res.input),
        "normalized": {"r": str(w.r), "d": str(w.d), "a": str(w.a), "dualized": res.transform.dualized},
        "h0": str(res.h0),
        "h1": str(res.h1),
        "chi": str(w.r + w.a),
        "input_cohomology": {"h0": str(h0), "h1": str(h1), "h2": str(h2)},
    }
    if w.d > 0:
        report = weak_bn(res.n, w)
        doc["height"] = height(res.n, w)
        doc["weak_bn"] = {"holds": report.holds, "y": None if report.y is None else _frac(report.y)}
    else:
        doc["height"] = 0
        doc["weak_bn"] = {"holds": True, "y": None}
    doc["trace"] = trace_json(res.trace)
    return doc


def error_json(n: Optional[int], v: Optional[MukaiVector], exc: Exception) -> dict:
    doc: dict = {"schema": SCHEMA}
    if n is not None and v is not None:
        doc["input"] = _input_json(n, v)
    doc["error"] = getattr(exc, "code", "error")
    doc["message"] = str(exc)
    if isinstance(exc, NeedsFullLocalReduction):
        if exc.segment is not None:
            doc["segment"] = shape_json(exc.segment)
        if exc.lattice is not None:
            doc["lattice"] = {"s0": _vec(exc.lattice.s0), "t1": _vec(exc.lattice.t1), "g": str(exc.lattice.g)}
        if exc.trace is not None:
            doc["trace"] = trace_json(exc.trace)
    return doc


def _arc_extent(trace: Trace) -> tuple[float, float, float]:
    lo, hi, top = -0.5, 0.5, 1.0
    for step in trace:
        c = float(step.wall.center)
        r = math.sqrt(float(step.wall.radius_sq))
        lo, hi, top = min(lo, c - r), max(hi, c + r), max(top, r)
    return lo, hi, top


def render_walls_svg(n: int, v: MukaiVector, trace: Trace) -> str:
    """A deterministic SVG 1.1 drawing of the walls crossed, with the BN point."""
    width, height_px, margin = 800, 420, 20
    bn_t = math.sqrt(1.0 / n)
    lo, hi, top = _arc_extent(trace)
    top = max(top, bn_t) * 1.1
    span = hi - lo
    sx = (width - 2 * margin) / span
    sy = (height_px - 2 * margin) / top

    def px(s: float) -> float:
        return margin + (s - lo) * sx

    def py(t: float) -> float:
        return height_px - margin - t * sy

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height_px}" '
        f'viewBox="0 0 {width} {height_px}">',
        f"<title>walls of {v} on a K3 surface with H^2={2 * n}</title>",
        f'<line x1="{margin}" y1="{py(0):.4f}" x2="{width - margin}" y2="{py(0):.4f}" stroke="black"/>',
        f'<line x1="{px(0):.4f}" y1="{py(0):.4f}" x2="{px(0):.4f}" y2="{margin}" stroke="gray" stroke-dasharray="4 4"/>',
    ]
    for k, step in enumerate(trace.steps):
        c = float(step.wall.center)
        r = math.sqrt(float(step.wall.radius_sq))
        x1, x2, y0 = px(c - r), px(c + r), py(0)
        rx, ry = r * sx, r * sy
        pair = f"{step.lattice.s0} {step.lattice.t1} g={step.lattice.g}"
        lines.append(
            f'<path class="wall" d="M {x1:.4f} {y0:.4f} A {rx:.4f} {ry:.4f} 0 0 1 {x2:.4f} {y0:.4f}" '
            f'fill="none" stroke="steelblue"><title>{pair}</title></path>'
        )
        lines.append(
            f'<text x="{px(c):.4f}" y="{py(r) - 4:.4f}" font-size="10" text-anchor="middle">{k + 1}: {pair}</text>'
        )
    lines.append(
        f'<circle class="bn-point" cx="{px(0):.4f}" cy="{py(bn_t):.4f}" r="4" fill="crimson">'
        f"<title>BN point (0, {bn_t:.6f})</title></circle>"
    )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def emit_walls_svg(n: int, v: MukaiVector, path: str, trace: Optional[Trace] = None) -> None:
    if trace is None:
        try:
            trace = cohomology(n, v).trace
        except NeedsFullLocalReduction as exc:
            trace = exc.trace or Trace()
    text = render_walls_svg(n, v, trace)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def _emit(doc: dict, out: TextIO) -> None:
    out.write(json.dumps(doc, sort_keys=False) + "\n")


def _run_cohomology(q: QuerySpec, out: TextIO) -> int:
    try:
        res = cohomology(q.n, q.v, q.max_walls)
    except NeedsFullLocalReduction as exc:
        if q.svg_path:
            emit_walls_svg(q.n, q.v, q.svg_path, exc.trace or Trace())
        if q.output == "json":
            _emit(error_json(q.n, q.v, exc), out)
        else:
            out.write(f"needs-full-local-reduction: {exc}\n")
            if exc.trace is not None:
                out.write(f"walls crossed before stopping: g = {', '.join(map(str, exc.trace.g_values()))}\n")
            if exc.segment is not None:
                out.write(f"stuck segment: {exc.segment}\n")
        return EXIT_NEEDS_FULL
    if q.svg_path:
        emit_walls_svg(q.n, q.v, q.svg_path, res.trace)
    if q.output == "json":
        _emit(cohomology_json(res), out)
    else:
        out.write(f"h0={res.h0} h1={res.h1}\n")
        out.write(f"chi={res.normalized.r + res.normalized.a} walls={len(res.trace)}\n")
        if res.transform.dualized:
            h0, h1, h2 = res.input_cohomology
            out.write(f"dualized input: h0={h0} h1={h1} h2={h2}\n")
    return EXIT_OK


def _run_weakbn(q: QuerySpec, out: TextIO) -> int:
    report = weak_bn(q.n, q.v)
    y = None if report.y is None else _frac(report.y)
    if q.output == "json":
        _emit(
            {
                "schema": SCHEMA,
                "input": _input_json(q.n, q.v),
                "holds": report.holds,
                "y": y,
                "witnesses": [{"v": _vec(c), "ratio": _frac(r)} for c, r in report.witnesses],
            },
            out,
        )
    else:
        out.write(f"holds={str(report.holds).lower()} y={y}\n")
        for c, r in report.witnesses:
            out.write(f"witness {c} ratio {r}\n")
    return EXIT_OK


def _run_walls(q: QuerySpec, out: TextIO) -> int:
    code = EXIT_OK
    try:
        trace = cohomology(q.n, q.v, q.max_walls).trace
    except NeedsFullLocalReduction as exc:
        trace = exc.trace or Trace()
        code = EXIT_NEEDS_FULL
    if q.svg_path:
        emit_walls_svg(q.n, q.v, q.svg_path, trace)
    if q.output == "json":
        doc = {"schema": SCHEMA, "input": _input_json(q.n, q.v), "walls": trace_json(trace)}
        if code == EXIT_NEEDS_FULL:
            doc["error"] = NeedsFullLocalReduction.code
        _emit(doc, out)
    else:
        for k, step in enumerate(trace, 1):
            out.write(
                f"{k}: t0^2={step.wall_key.t0_sq} c2={step.wall_key.c2} g={step.lattice.g} "
                f"s0={step.lattice.s0} t1={step.lattice.t1} rule={step.rule}\n"
            )
        if code == EXIT_NEEDS_FULL:
            out.write("needs-full-local-reduction\n")
    return code


def _run_height(q: QuerySpec, out: TextIO) -> int:
    from .mukai import normalize_input

    w, _ = normalize_input(q.n, q.v)
    h = 0 if w.d == 0 else height(q.n, w)
    if q.output == "json":
        _emit({"schema": SCHEMA, "input": _input_json(q.n, q.v), "height": h}, out)
    else:
        out.write(f"height={h}\n")
    return EXIT_OK


def _batch_line(item: tuple[int, str], max_walls: int) -> Optional[dict]:
    lineno, text = item
    parts = text.split()
    try:
        n, r, d, a = (int(p) for p in parts)
        half_degree(n)
    except (ValueError, TypeError):
        return {"schema": SCHEMA, "line": lineno, "error": "parse", "message": f"expected 'n r d a': {text!r}"}
    v = MukaiVector(r, d, a)
    try:
        doc = cohomology_json(cohomology(n, v, max_walls))
    except SphcohError as exc:
        doc = error_json(n, v, exc)
    doc["line"] = lineno
    return doc


def batch(path: str, out: TextIO, max_walls: int = DEFAULT_MAX_WALLS, workers: Optional[int] = None) -> int:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = [(k, ln.strip()) for k, ln in enumerate(fh, 1)]
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    items = [it for it in lines if it[1] and not it[1].startswith("#")]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        for doc in pool.map(lambda it: _batch_line(it, max_walls), items):
            _emit(doc, out)
    return EXIT_OK


def _configure_logging() -> None:
    level = os.environ.get("SPHCOH_LOG", "off").lower()
    logger = logging.getLogger("sphcoh")
    if level == "trace":
        if not any(getattr(h, "_sphcoh", False) for h in logger.handlers):
            handler = logging.StreamHandler(sys.stderr)
            handler.setFormatter(logging.Formatter("sphcoh: %(message)s"))
            handler._sphcoh = True
            logger.addHandler(handler)
        logger.setLevel(logging.DEBUG)
    else:
        logger.setLevel(logging.WARNING)


def _parse_vector(text: str) -> MukaiVector:
    try:
        return MukaiVector.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=1, help="half-degree n, so that H^2 = 2n (default 1)")
    common.add_argument("--v", type=_parse_vector, help="Mukai vector as r,d,a")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--svg", metavar="PATH", help="write an SVG figure of the walls crossed")
    common.add_argument("--max-walls", type=int, default=DEFAULT_MAX_WALLS, help="limit on wall crossings")

    parser = argparse.ArgumentParser(
        prog="sphcoh",
        description="Cohomology of stable spherical bundles on Picard rank one K3 surfaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("cohomology", parents=[common], help="compute h0 and h1")
    sub.add_parser("weakbn", parents=[common], help="decide whether h1 vanishes")
    sub.add_parser("walls", parents=[common], help="list the walls crossed")
    sub.add_parser("height", parents=[common], help="height of the class")
    b = sub.add_parser("batch", parents=[common], help="run a file of 'n r d a' lines")
    b.add_argument("file", nargs="?", help="batch input file")
    b.add_argument("--batch", dest="batch_file", metavar="FILE", help="batch input file")
    return parser


def run(argv: Optional[Sequence[str]] = None, out: Optional[TextIO] = None, err: Optional[TextIO] = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    _configure_logging()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    output = "json" if args.json else "human"
    try:
        if args.n < 1:
            raise InputError(f"--n must be positive, got {args.n}")
        if args.command == "batch":
            path = args.batch_file or args.file
            if not path:
                raise InputError("batch needs an input file")
            return batch(path, out, args.max_walls)
        if args.v is None:
            raise InputError("--v r,d,a is required")
        q = QuerySpec(args.command, args.n, args.v, output, args.svg, args.max_walls)
        handler = {
            "cohomology": _run_cohomology,
            "weakbn": _run_weakbn,
            "walls": _run_walls,
            "height": _run_height,
        }[args.command]
        return handler(q, out)
    except SphcohError as exc:
        if output == "json":
            _emit(error_json(args.n, getattr(args, "v", None), exc), out)
        else:
            err.write(f"error: {exc}\n")
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
