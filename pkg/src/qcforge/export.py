"""Deterministic JSON/CSV serialization.

Hand-rolled on purpose: every float is rendered with 17 significant digits
(round-trippable), dict key order is preserved exactly as built, lines end
with LF, and files are written atomically — so identical inputs produce
byte-identical artifacts.
"""

from __future__ import annotations

import math
import os

__all__ = [
    "format_float",
    "json_dumps",
    "rows_to_csv",
    "polyline_csv",
    "profile_csv",
    "write_text",
]


def format_float(v: float) -> str:
    if math.isnan(v):
        return '"nan"'
    if math.isinf(v):
        return '"inf"' if v > 0 else '"-inf"'
    if v == int(v) and abs(v) < 1e16:
        return f"{int(v)}"
    return f"{v:.17g}"


def _dump(obj, out: list):
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, str):
        out.append('"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"')
    elif isinstance(obj, dict):
        out.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                out.append(",")
            _dump(str(k), out)
            out.append(":")
            _dump(v, out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, v in enumerate(obj):
            if i:
                out.append(",")
            _dump(v, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def json_dumps(obj) -> str:
    out: list[str] = []
    _dump(obj, out)
    out.append("\n")
    return "".join(out)


def _csv_cell(v) -> str:
    if isinstance(v, float):
        s = format_float(v)
        return s.strip('"')
    return str(v)


def rows_to_csv(header: tuple[str, ...], rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_csv_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def polyline_csv(polyline) -> str:
    return rows_to_csv(
        ("t", "x", "y"),
        ((t, v.x, v.y)
         for t, v in zip(polyline.params, polyline.vertices)))


def profile_csv(profile, params=None) -> str:
    """Columns (K, exceedance_area, bound_C_alpha, truncation); the bound
    column is empty without params."""
    rows = []
    for k, area in profile.entries:
        bound = params.bound(k) if params is not None else ""
        rows.append((k, area, bound, profile.truncation_bound))
    return rows_to_csv(("K", "exceedance_area", "bound_C_alpha",
                        "truncation"), rows)


def write_text(path: str, text: str):
    """Atomic write with LF endings."""
    tmp = path + ".tmp"
    with open(tmp, "w", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)
