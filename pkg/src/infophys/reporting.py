"""Byte-stable JSON and CSV writers for run reports.

Floats are written with 17 significant digits, keys keep insertion order,
and CSV uses ``,`` / ``.`` / LF with a single header row.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

LN2 = math.log(2.0)


def format_float(x: float) -> str:
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if x == 0:
        return "0.0"
    text = f"{x:.17g}"
    # keep integral floats recognizably floating point ("1.0", not "1")
    return text + ".0" if text.lstrip("-").isdigit() else text


def _plain(value):
    """Collapse numpy scalars/arrays and tuples into plain Python values."""
    if hasattr(value, "tolist"):
        return _plain(value.tolist())
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    return value


def _encode(value, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if value is None or isinstance(value, (bool, str)):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return json.dumps(format_float(value)) if not math.isfinite(value) else format_float(value)
    if isinstance(value, list):
        if not value:
            return "[]"
        if all(not isinstance(v, (list, dict)) for v in value):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in value) + "]"
        items = ",\n".join(pad + _encode(v, indent, level + 1) for v in value)
        return "[\n" + items + "\n" + end + "]"
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = ",\n".join(f"{pad}{json.dumps(k, ensure_ascii=False)}: "
                           f"{_encode(v, indent, level + 1)}" for k, v in value.items())
        return "{\n" + items + "\n" + end + "}"
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps(report, indent: int = 2) -> str:
    return _encode(_plain(report), indent, 0) + "\n"


def apply_units(value, units: str = "nats"):
    """Drop the ``_nats`` marker from entropic keys, rescaling to bits if asked.

    Runners tag entropic quantities with a ``_nats`` key suffix; reports
    carry plain names plus a top-level ``units`` field.
    """
    factor = 1.0 / LN2 if units == "bits" else 1.0
    if isinstance(value, dict):
        out = {}
        for k, v in value.items():
            if k.endswith("_nats"):
                out[k[:-5]] = _scale(v, factor)
            else:
                out[k] = apply_units(v, units)
        return out
    if isinstance(value, list):
        return [apply_units(v, units) for v in value]
    return value


def _scale(v, factor):
    if isinstance(v, list):
        return [_scale(x, factor) for x in v]
    if isinstance(v, float):
        return v * factor
    return v


def flatten(report: dict, prefix: str = "") -> dict:
    """Flatten nested dicts/lists into ``a_b_0``-style keys for one-row CSV."""
    out = {}
    for k, v in report.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(flatten(v, key + "_"))
        elif isinstance(v, list) and any(isinstance(x, (dict, list)) for x in v):
            for i, x in enumerate(v):
                if isinstance(x, dict):
                    name = x.get("name", str(i))
                    out.update(flatten({kk: vv for kk, vv in x.items() if kk != "name"},
                                       f"{key}_{name}_"))
                else:
                    out[f"{key}_{i}"] = x
        elif isinstance(v, list):
            out[key] = " ".join(_cell(x) for x in v)
        else:
            out[key] = v
    return out


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format_float(v)
    if v is None:
        return ""
    return str(v)


def _row(cells) -> str:
    cells = list(cells)
    if any("," in c or "\n" in c for c in cells):
        raise ValueError("CSV cells must not contain separators (no quoting is used)")
    return ",".join(cells)


def csv_text(columns, rows) -> str:
    lines = [_row(columns)]
    lines.extend(_row(_cell(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
