"""Deterministic report serialization.

Floats are printed with 12 significant digits, exact rationals as
"p/q" strings (plain "n" when integral), so identical runs emit
byte-identical JSON and CSV no matter the thread count.  Non-finite
floats are rejected: a report with an infinity in it is a bug upstream.
"""

from __future__ import annotations

import csv
import math
from fractions import Fraction


def render_number(x) -> str:
    """Canonical text form of a report number."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return str(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError("non-finite float in report")
        return "%.12g" % x
    raise TypeError(f"not a report number: {x!r}")


def _escape(text: str) -> str:
    out = ['"']
    for ch in text:
        if ch == '"':
            out.append('\\"')
        elif ch == "\\":
            out.append("\\\\")
        elif ch == "\n":
            out.append("\\n")
        elif ch == "\t":
            out.append("\\t")
        elif ch == "\r":
            out.append("\\r")
        elif ord(ch) < 0x20:
            out.append("\\u%04x" % ord(ch))
        else:
            out.append(ch)
    out.append('"')
    return "".join(out)


def json_dumps(obj, indent: int = 0) -> str:
    """Serialize a report object tree; key order is insertion order."""
    pad = " " * indent
    inner = " " * (indent + 2)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, Fraction):
        return _escape(str(obj))
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return render_number(obj)
    if isinstance(obj, str):
        return _escape(obj)
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [inner + json_dumps(x, indent + 2) for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            inner + _escape(str(k)) + ": " + json_dumps(v, indent + 2)
            for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    raise TypeError(f"cannot serialize {type(obj).__name__} in a report")


def write_json(stream, objects) -> None:
    """Write a top-level JSON array of report objects."""
    stream.write(json_dumps(list(objects)))
    stream.write("\n")


CSV_HEADER = ("id", "params", "lhs", "rhs", "margin", "status")


def _csv_cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    return render_number(x)


def write_csv(stream, rows, header=CSV_HEADER) -> None:
    """Write rows with the mandatory header; one row per tested instance."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(c) for c in row])
