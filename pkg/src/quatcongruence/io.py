"""Point files and deterministic JSON output.

A point file is UTF-8 JSON::

    {"n": 2,
     "points": [[[a0, a1, a2, a3], [a0, a1, a2, a3], [a0, a1, a2, a3]], ...],
     "options": {"tol_abs": 1e-9, "tol_rel": 1e-7, "eps_isotropy": 1e-9, "seed": 0}}

Coordinates may also be plain real numbers.  Output floats carry 17
significant digits and keys keep insertion order, so identical inputs give
byte-identical output.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from numbers import Integral, Real
from pathlib import Path

import numpy as np

from .errors import DimensionError, InputError

OPTION_KEYS = ("tol_abs", "tol_rel", "eps_isotropy", "seed")


@dataclass
class PointFile:
    n: int
    points: list[np.ndarray]
    options: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "points": [p.tolist() for p in self.points],
            "options": dict(self.options),
        }


def _point_lines(text: str) -> list[int]:
    """Line number on which each entry of the "points" array starts."""
    start = text.find('"points"')
    if start < 0:
        return []
    try:
        pos = text.index("[", start)
    except ValueError:
        return []
    depth = 0
    in_str = False
    lines = []
    for k in range(pos, len(text)):
        ch = text[k]
        if ch == '"' and text[k - 1] != "\\":
            in_str = not in_str
        if in_str:
            continue
        if ch == "[":
            depth += 1
            if depth == 2:
                lines.append(text.count("\n", 0, k) + 1)
        elif ch == "]":
            depth -= 1
            if depth == 0:
                break
    return lines


def _coord(c, where: str) -> list[float]:
    if isinstance(c, bool):
        raise InputError(f"{where}: coordinate must be a number or a 4-array, got {c!r}")
    if isinstance(c, Real):
        return [float(c), 0.0, 0.0, 0.0]
    if isinstance(c, list) and len(c) == 4 and all(
        isinstance(x, Real) and not isinstance(x, bool) for x in c
    ):
        return [float(x) for x in c]
    raise InputError(f"{where}: coordinate must be a number or a 4-array, got {c!r}")


def parse_points(text: str, source: str = "<input>") -> PointFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}:{exc.lineno}: invalid JSON ({exc.msg})") from None
    if not isinstance(doc, dict):
        raise InputError(f"{source}:1: top level must be an object")
    n = doc.get("n")
    if not isinstance(n, Integral) or isinstance(n, bool) or n < 1:
        raise InputError(f"{source}: 'n' must be a positive integer, got {n!r}")
    pts = doc.get("points")
    if not isinstance(pts, list):
        raise InputError(f"{source}: 'points' must be a list")
    lines = _point_lines(text)
    points = []
    for k, p in enumerate(pts):
        line = lines[k] if k < len(lines) else "?"
        where = f"{source}:{line}: point {k + 1}"
        if not isinstance(p, list):
            raise InputError(f"{where}: expected a list of coordinates")
        if len(p) != n + 1:
            raise DimensionError(f"{where} has {len(p)} coordinates, expected {n + 1}")
        points.append(np.array([_coord(c, where) for c in p], dtype=float))
    options = doc.get("options", {})
    if not isinstance(options, dict):
        raise InputError(f"{source}: 'options' must be an object")
    unknown = sorted(set(options) - set(OPTION_KEYS))
    if unknown:
        raise InputError(f"{source}: unknown options {unknown}")
    return PointFile(int(n), points, dict(options))


def load(path) -> PointFile:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    return parse_points(text, str(path))


def fmt_float(x: float) -> str:
    x = float(x) + 0.0  # folds -0.0 into 0.0
    if not math.isfinite(x):
        return "null"
    s = format(x, ".17g")
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def _scalar(x) -> str | None:
    if x is None:
        return "null"
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (Integral, np.integer)):
        return str(int(x))
    if isinstance(x, (Real, np.floating)):
        return fmt_float(x)
    if isinstance(x, str):
        return json.dumps(x, ensure_ascii=False)
    return None


def _depth(x) -> int:
    if isinstance(x, (list, tuple)):
        return 1 + max((_depth(y) for y in x), default=0)
    if isinstance(x, dict):
        return 99
    return 0


def _dump(x, indent: int) -> str:
    s = _scalar(x)
    if s is not None:
        return s
    if isinstance(x, np.ndarray):
        return _dump(x.tolist(), indent)
    pad = "  " * (indent + 1)
    if isinstance(x, dict):
        if not x:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_dump(v, indent + 1)}" for k, v in x.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(x, (list, tuple)):
        if not x:
            return "[]"
        if _depth(x) <= 2:
            return "[" + ", ".join(_dump(y, indent) for y in x) + "]"
        items = [pad + _dump(y, indent + 1) for y in x]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(obj) -> str:
    """Deterministic JSON text (17 significant digits, insertion-ordered keys)."""
    return _dump(obj, 0) + "\n"


def serialize(pf: PointFile) -> str:
    return dumps(pf.to_json())
