"""JSON documents for configurations, monodromy tuples and kernels.

Parsing checks every field and reports the JSON path of the first problem.
:func:`dump_document` produces the canonical form, so parsing its output and
dumping again gives identical bytes.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from .convolution import ConvolutionKernel, EigenBlock, EigenExp, MonodromyTuple
from .errors import CharvarError
from .gl import GlConfiguration
from .partitions import Partition
from .quadratic import OverlappingConfiguration, QuadColumn, QuadConfiguration, TypedPart

Document = Union[GlConfiguration, QuadConfiguration, OverlappingConfiguration, MonodromyTuple, ConvolutionKernel]

KINDS = ("gl", "quad", "quad-overlapping", "monodromy-tuple", "kernel")


class DocumentError(CharvarError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.detail = message


def _fields(obj, path, required, optional=()):
    if not isinstance(obj, dict):
        raise DocumentError(path, "expected an object")
    unknown = sorted(set(obj) - set(required) - set(optional))
    if unknown:
        raise DocumentError(path, f"unknown field {unknown[0]!r}")
    for name in required:
        if name not in obj:
            raise DocumentError(path, f"missing field {name!r}")


def _int(value, path) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(path, f"expected an integer, got {value!r}")
    return value


def _list(value, path) -> list:
    if not isinstance(value, list):
        raise DocumentError(path, f"expected a list, got {value!r}")
    return value


def _fraction(value, path) -> EigenExp:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise DocumentError(path, f"expected a fraction string like \"1/3\", got {value!r}")
    try:
        return EigenExp.parse(value)
    except CharvarError as exc:
        raise DocumentError(path, str(exc)) from None


def _typed_part(value, path) -> TypedPart:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise DocumentError(path, f"expected a part like 5 or \"5e\", got {value!r}")
    try:
        return TypedPart.parse(value)
    except (ValueError, CharvarError) as exc:
        raise DocumentError(path, f"bad part {value!r}: {exc}") from None


def _wrap(path, build):
    try:
        return build()
    except DocumentError:
        raise
    except CharvarError as exc:
        raise DocumentError(path, str(exc)) from None


def _points(obj, path):
    if "points" not in obj:
        return (1, 2, 3)
    pts = _list(obj["points"], f"{path}.points")
    if len(pts) != 3:
        raise DocumentError(f"{path}.points", "expected three point labels")
    return tuple(_int(p, f"{path}.points[{i}]") for i, p in enumerate(pts))


def _columns(obj, path, typed: bool):
    cols = _list(obj["columns"], f"{path}.columns")
    if len(cols) != 3:
        raise DocumentError(f"{path}.columns", f"expected three columns, got {len(cols)}")
    out = []
    for i, col in enumerate(cols):
        cp = f"{path}.columns[{i}]"
        _fields(col, cp, ("width", "parts"))
        width = _int(col["width"], f"{cp}.width")
        raw = _list(col["parts"], f"{cp}.parts")
        if typed:
            parts = tuple(_typed_part(p, f"{cp}.parts[{j}]") for j, p in enumerate(raw))
            out.append(_wrap(cp, lambda: QuadColumn(width, parts)))
        else:
            parts = [_int(p, f"{cp}.parts[{j}]") for j, p in enumerate(raw)]
            out.append((width, _wrap(f"{cp}.parts", lambda: Partition.sorted(parts))))
    return out


def parse_document(obj: Any) -> Document:
    path = "$"
    if not isinstance(obj, dict) or "kind" not in obj:
        raise DocumentError(path, "expected an object with a 'kind' field")
    kind = obj["kind"]
    if kind not in KINDS:
        raise DocumentError(f"{path}.kind", f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    if kind == "gl":
        _fields(obj, path, ("kind", "rank", "columns"), ("points",))
        rank = _int(obj["rank"], f"{path}.rank")
        cols = _columns(obj, path, typed=False)
        points = _points(obj, path)
        return _wrap(path, lambda: GlConfiguration(rank, tuple(w for w, _ in cols), tuple(c for _, c in cols), points))
    if kind == "quad":
        _fields(obj, path, ("kind", "rank", "epsilon", "columns"), ("points",))
        rank = _int(obj["rank"], f"{path}.rank")
        eps = _int(obj["epsilon"], f"{path}.epsilon")
        cols = _columns(obj, path, typed=True)
        points = _points(obj, path)
        return _wrap(path, lambda: QuadConfiguration(rank, eps, tuple(cols), points))
    if kind == "quad-overlapping":
        _fields(obj, path, ("kind", "rank", "epsilon", "columns", "mu"), ("overlap",))
        rank = _int(obj["rank"], f"{path}.rank")
        eps = _int(obj["epsilon"], f"{path}.epsilon")
        mu = _int(obj["mu"], f"{path}.mu")
        cols = _columns(obj, path, typed=True)
        pair = obj.get("overlap", [1, 2])
        pair = tuple(_int(x, f"{path}.overlap[{i}]") for i, x in enumerate(_list(pair, f"{path}.overlap")))
        return _wrap(path, lambda: OverlappingConfiguration(rank, eps, tuple(cols), mu, pair))
    if kind == "monodromy-tuple":
        _fields(obj, path, ("kind", "rank", "points"))
        rank = _int(obj["rank"], f"{path}.rank")
        points = []
        for i, pt in enumerate(_list(obj["points"], f"{path}.points")):
            pp = f"{path}.points[{i}]"
            blocks = []
            for j, blk in enumerate(_list(pt, pp)):
                bp = f"{pp}[{j}]"
                _fields(blk, bp, ("eigenvalue", "parts"))
                ev = _fraction(blk["eigenvalue"], f"{bp}.eigenvalue")
                parts = [_int(p, f"{bp}.parts[{k}]") for k, p in enumerate(_list(blk["parts"], f"{bp}.parts"))]
                blocks.append(_wrap(bp, lambda: EigenBlock(ev, Partition.sorted(parts))))
            points.append(tuple(blocks))
        return _wrap(path, lambda: MonodromyTuple(rank, tuple(points)))
    _fields(obj, path, ("kind", "betaH", "betaV", "betaT"))
    h = tuple(_fraction(x, f"{path}.betaH[{i}]") for i, x in enumerate(_list(obj["betaH"], f"{path}.betaH")))
    v = tuple(_fraction(x, f"{path}.betaV[{i}]") for i, x in enumerate(_list(obj["betaV"], f"{path}.betaV")))
    t = _fraction(obj["betaT"], f"{path}.betaT")
    return _wrap(path, lambda: ConvolutionKernel(h, v, t))


def load_document(source: str | Path) -> Document:
    """Read and parse a document file."""
    try:
        text = Path(source).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(str(source), f"cannot read: {exc.strerror or exc}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{source}: $", f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    try:
        return parse_document(obj)
    except DocumentError as exc:
        raise DocumentError(f"{source}: {exc.path}", exc.detail) from None


def _quad_columns(cols) -> list[dict]:
    return [{"width": c.width, "parts": [str(p) for p in c.parts]} for c in cols]


def dump_document(doc: Document) -> dict:
    """Canonical JSON-ready form of a parsed document."""
    if isinstance(doc, GlConfiguration):
        return {
            "kind": "gl",
            "rank": doc.rank,
            "columns": [{"width": q, "parts": list(c.parts)} for q, c in zip(doc.widths, doc.columns)],
            "points": list(doc.points),
        }
    if isinstance(doc, QuadConfiguration):
        return {
            "kind": "quad",
            "rank": doc.rank,
            "epsilon": doc.epsilon,
            "columns": _quad_columns(doc.columns),
            "points": list(doc.points),
        }
    if isinstance(doc, OverlappingConfiguration):
        return {
            "kind": "quad-overlapping",
            "rank": doc.rank,
            "epsilon": doc.epsilon,
            "columns": _quad_columns(doc.columns),
            "mu": doc.mu,
            "overlap": list(doc.overlap),
        }
    if isinstance(doc, MonodromyTuple):
        return {
            "kind": "monodromy-tuple",
            "rank": doc.rank,
            "points": [
                [{"eigenvalue": str(b.eigenvalue), "parts": list(b.dual_parts.parts)} for b in pt] for pt in doc.points
            ],
        }
    if isinstance(doc, ConvolutionKernel):
        return {
            "kind": "kernel",
            "betaH": [str(x) for x in doc.betaH],
            "betaV": [str(x) for x in doc.betaV],
            "betaT": str(doc.betaT),
        }
    raise TypeError(f"not a document: {type(doc).__name__}")


def dumps_document(doc: Document) -> str:
    return json.dumps(dump_document(doc), indent=2) + "\n"
