"""Plain-text formats: curve CSV in and out, JSON reports out."""

import csv
import io
import json
import math

import numpy as np

from .errors import SubdivisionError
from .grid import SampledCurve, abscissae


class InputError(SubdivisionError, ValueError):
    """Malformed or non-finite input data."""


def fmt(v):
    return format(float(v), ".17g")


def parse_curve_csv(text, base_spacing=1.0, source="<input>"):
    """Parse ``index,value`` or single-column ``value`` CSV into a level-0 curve.

    Indices must be consecutive integers; without them they start at 0.
    """
    rows = list(csv.reader(io.StringIO(text)))
    # drop trailing blank lines but keep line numbers of the rest
    while rows and not any(cell.strip() for cell in rows[-1]):
        rows.pop()
    if not rows:
        raise InputError(f"{source}: empty input")
    header = [cell.strip().lower() for cell in rows[0]]
    if header == ["value"]:
        with_index = False
    elif header == ["index", "value"]:
        with_index = True
    else:
        raise InputError(f"{source}:1: expected header 'index,value' or 'value', got {rows[0]!r}")

    indices, values = [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise InputError(f"{source}:{lineno}: expected {len(header)} fields, got {len(row)}")
        try:
            if with_index:
                idx = int(row[0].strip())
                val = float(row[1])
            else:
                val = float(row[0])
        except ValueError:
            raise InputError(f"{source}:{lineno}: cannot parse {row!r}") from None
        if not math.isfinite(val):
            raise InputError(f"{source}:{lineno}: non-finite value {row[-1].strip()!r}")
        if with_index:
            if indices and idx != indices[-1] + 1:
                raise InputError(f"{source}:{lineno}: index {idx} does not follow {indices[-1]}")
            indices.append(idx)
        values.append(val)
    if not values:
        raise InputError(f"{source}: no data rows")
    origin = indices[0] if with_index else 0
    return SampledCurve(np.array(values), level=0, base_spacing=base_spacing, origin=origin)


def read_curve_csv(path, base_spacing=1.0):
    try:
        with open(path, newline="") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    return parse_curve_csv(text, base_spacing, source=str(path))


def curve_csv(curve):
    lines = ["x,value"]
    lines += [f"{fmt(x)},{fmt(v)}" for x, v in zip(abscissae(curve), curve.values)]
    return "\n".join(lines) + "\n"


def aligned_csv(curve_a, curve_b, name_a, name_b):
    """Inner join of two curves of the same level and spacing on their grid index."""
    if curve_a.level != curve_b.level or curve_a.base_spacing != curve_b.base_spacing:
        raise ValueError("curves live on different grids")
    lo = max(curve_a.origin, curve_b.origin)
    hi = min(curve_a.origin + len(curve_a), curve_b.origin + len(curve_b))
    lines = [f"x,{name_a},{name_b}"]
    if hi > lo:
        xs = (np.arange(lo, hi) - 0.5) * curve_a.spacing
        va = curve_a.values[lo - curve_a.origin:hi - curve_a.origin]
        vb = curve_b.values[lo - curve_b.origin:hi - curve_b.origin]
        lines += [f"{fmt(x)},{fmt(a)},{fmt(b)}" for x, a, b in zip(xs, va, vb)]
    return "\n".join(lines) + "\n"


def report_json(obj):
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"
