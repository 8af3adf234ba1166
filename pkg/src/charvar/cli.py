"""``charvar`` command line.

Exit status is 0 on success, 1 when a sweep records a violation or a
convolution step fails, and 2 for unusable input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import __version__
from .convolution import ConvolutionKernel, MonodromyTuple, default_kernel, katz_reduce, mc_delta, mc_step
from .documents import dump_document, load_document
from .errors import CharvarError, ConvolutionError
from .gl import GlConfiguration, charvar_dimension, gl_dimension
from .quadratic import (
    OverlappingConfiguration,
    QuadConfiguration,
    box_dimension,
    column_dimensions,
    quad_dimension,
    to_non_overlapping,
    total_linear_correction,
)
from .verify import verify_column_propositions, verify_gl_bound, verify_nn_reduction, verify_quad_bound
from .diagram import render_svg

OK, FAILED, BAD_INPUT = 0, 1, 2

VERIFY_DEFAULTS = {"gl": ("max", 120), "props": ("max", 20), "quad": ("range", (48, 66)), "nn": ("range", (48, 66))}


def _color(text: str, code: str, stream) -> str:
    if os.environ.get("NO_COLOR") or not getattr(stream, "isatty", lambda: False)():
        return text
    return f"\033[{code}m{text}\033[0m"


def _fail(message: str, status: int = BAD_INPUT) -> int:
    print(f"charvar: {message}", file=sys.stderr)
    return status


def _dim_record(doc) -> dict:
    if isinstance(doc, GlConfiguration):
        return {
            "kind": "gl",
            "rank": doc.rank,
            "widths": list(doc.widths),
            "column_dims": list(doc.column_dimensions()),
            "delta": gl_dimension(doc),
            "charvar_dimension": charvar_dimension(doc),
        }
    rec = {
        "kind": "quad" if isinstance(doc, QuadConfiguration) else "quad-overlapping",
        "rank": doc.rank,
        "epsilon": doc.epsilon,
        "beta": box_dimension(doc),
        "l": total_linear_correction(doc),
        "delta": quad_dimension(doc),
    }
    if isinstance(doc, QuadConfiguration):
        rec["widths"] = list(doc.widths)
        rec["column_dims"] = list(column_dimensions(doc))
    else:
        rec["non_overlapping_rank"] = to_non_overlapping(doc).rank
    return rec


def cmd_dim(args) -> int:
    doc = load_document(args.file)
    if not isinstance(doc, (GlConfiguration, QuadConfiguration, OverlappingConfiguration)):
        return _fail(f"{args.file}: dim needs a gl, quad or quad-overlapping document")
    rec = _dim_record(doc)
    if args.format == "json":
        print(json.dumps(rec, indent=2))
    else:
        for key, value in rec.items():
            if isinstance(value, list):
                value = " ".join(map(str, value))
            print(f"{key}: {value}")
    return OK


def _verify_bounds(args, parser) -> tuple:
    mode, default = VERIFY_DEFAULTS[args.theorem]
    if mode == "max":
        if args.range is not None:
            parser.error(f"verify {args.theorem} takes --max-r, not --range")
        return (args.max_r if args.max_r is not None else default,)
    if args.max_r is not None:
        parser.error(f"verify {args.theorem} takes --range, not --max-r")
    return tuple(args.range) if args.range is not None else default


def cmd_verify(args, parser) -> int:
    bounds = _verify_bounds(args, parser)
    jobs = args.jobs
    if args.theorem == "gl":
        if bounds[0] < 6:
            parser.error("--max-r must be at least 6")
        report = verify_gl_bound(bounds[0], jobs=jobs)
    elif args.theorem == "props":
        if bounds[0] < 1:
            parser.error("--max-r must be at least 1")
        report = verify_column_propositions(bounds[0], jobs=jobs)
    else:
        lo, hi = bounds
        if args.theorem == "quad":
            if not 3 <= lo <= hi:
                parser.error("--range needs 3 <= LO <= HI")
            report = verify_quad_bound(lo, hi, jobs=jobs, prune=not args.no_prune)
        else:
            if not 48 <= lo <= hi:
                parser.error("--range needs 48 <= LO <= HI")
            report = verify_nn_reduction(lo, hi, jobs=jobs, scope=args.scope)
    if args.format == "json":
        text = report.to_json(timing=not args.no_timing)
    else:
        text = _report_text(report, not args.no_timing, sys.stdout if args.out is None else None)
    if args.out is None:
        sys.stdout.write(text)
    else:
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            return _fail(f"cannot write {args.out}: {exc.strerror or exc}")
    return OK if report.passed else FAILED


def _report_text(report, timing: bool, stream) -> str:
    status = report.status
    if stream is not None:
        status = _color(status, "32" if report.passed else "31", stream)
    lo, hi = report.range
    lines = [f"{report.theorem}: {status} (r = {lo}..{hi})"]
    lines += [f"note: {n}" for n in report.notes]
    lines.append(f"witnesses: {len(report.witnesses)}")
    for w in report.witnesses:
        lines.append("  " + json.dumps(w, separators=(",", ":")))
    lines.append(f"violations: {len(report.violations)}")
    for v in report.violations:
        lines.append("  " + json.dumps(v, separators=(",", ":")))
    if timing:
        lines.append(f"elapsed_ms: {report.elapsed_ms}")
    return "\n".join(lines) + "\n"


def _compact(tup: MonodromyTuple) -> str:
    return json.dumps(dump_document(tup), separators=(",", ":"))


def cmd_mc(args) -> int:
    doc = load_document(args.file)
    if not isinstance(doc, MonodromyTuple):
        return _fail(f"{args.file}: mc needs a monodromy-tuple document")
    try:
        if args.kernel is not None:
            kernel = load_document(args.kernel)
            if not isinstance(kernel, ConvolutionKernel):
                return _fail(f"{args.kernel}: --kernel needs a kernel document")
            delta = mc_delta(doc, kernel)
            new = mc_step(doc, kernel)
            print(f"ranks: {doc.rank} -> {new.rank}")
            if args.trace:
                print(f"delta: {delta}")
            print(f"terminal: {_compact(new)}")
            return OK
        if doc.k == 3 and doc.rank > 1:
            delta = mc_delta(doc, default_kernel(doc))
            if delta >= 0:
                print(f"already MC-minimal (defect {delta})")
                print(f"terminal: {_compact(doc)}")
                return OK
        final, trace = katz_reduce(doc)
    except ConvolutionError as exc:
        return _fail(f"{type(exc).__name__}: {exc}", FAILED)
    ranks = [doc.rank] + [s.rank_after for s in trace]
    print("ranks: " + " -> ".join(map(str, ranks)))
    if args.trace:
        for s in trace:
            k = s.kernel
            print(f"step {s.index}: delta {s.delta}, rank {s.rank_before} -> {s.rank_after}")
            print(f"  betaH {' '.join(map(str, k.betaH))}; betaV {' '.join(map(str, k.betaV))}; betaT {k.betaT}")
            print(f"  distinguished {list(s.distinguished)}; new sizes {list(s.sizes)}; "
                  f"delta_i + delta_i would give {list(s.literal_sizes)}")
    print(f"terminal: {_compact(final)}")
    return OK


def cmd_diagram(args) -> int:
    doc = load_document(args.file)
    if not isinstance(doc, (GlConfiguration, QuadConfiguration, OverlappingConfiguration)):
        return _fail(f"{args.file}: diagram needs a gl, quad or quad-overlapping document")
    svg = render_svg(doc)
    try:
        Path(args.out).write_text(svg, encoding="utf-8")
    except OSError as exc:
        return _fail(f"cannot write {args.out}: {exc.strerror or exc}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="charvar", description="Configuration dimensions and rank-bound sweeps.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dim", help="dimension of a configuration document")
    p.add_argument("file")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("verify", help="run an exhaustive sweep")
    p.add_argument("theorem", choices=("gl", "quad", "nn", "props"))
    group = p.add_mutually_exclusive_group()
    group.add_argument("--max-r", type=int, dest="max_r")
    group.add_argument("--range", type=int, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: CPU count)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out")
    p.add_argument("--scope", choices=("all", "positive"), default="all", help="nn: which deltas count")
    p.add_argument("--no-prune", action="store_true", help="quad: score every partition")
    p.add_argument("--no-timing", action="store_true", help="omit elapsed time for reproducible output")

    p = sub.add_parser("mc", help="middle convolution / Katz reduction")
    p.add_argument("file")
    p.add_argument("--kernel")
    p.add_argument("--trace", action="store_true")

    p = sub.add_parser("diagram", help="write an SVG diagram")
    p.add_argument("file")
    p.add_argument("--out", required=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", None) is not None and args.jobs < 1:
        parser.error("--jobs must be at least 1")
    try:
        if args.command == "dim":
            return cmd_dim(args)
        if args.command == "verify":
            return cmd_verify(args, parser)
        if args.command == "mc":
            return cmd_mc(args)
        return cmd_diagram(args)
    except CharvarError as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
