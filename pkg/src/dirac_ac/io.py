"""Deterministic CSV/JSON writers and the flat ``key = value`` config format.

Every float is written with 17 significant digits so output files round-trip
bit for bit and are byte-identical across runs.
"""

from __future__ import annotations

import csv
import json
import math
from collections.abc import Mapping, Sequence
from pathlib import Path

from .model import format_float

__all__ = ["format_float", "format_value", "write_csv", "dumps_json", "parse_config", "ConfigError"]


class ConfigError(ValueError):
    pass


def format_value(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def write_csv(rows: Sequence[Mapping], columns: Sequence[str], stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row.get(c)) for c in columns])


def _json_lines(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    close = " " * (indent * level)
    if isinstance(obj, Mapping):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_json_lines(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + close + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + _json_lines(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + close + "]"
    if isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError(f"cannot serialize non-finite float {obj!r}")
        return format_float(obj)
    return json.dumps(obj)


def dumps_json(obj, indent: int = 2) -> str:
    """Like :func:`json.dumps` but with floats at 17 significant digits."""
    return _json_lines(obj, indent, 0) + "\n"


def parse_config(path: str | Path) -> dict[str, str]:
    """Read ``key = value`` lines; ``#`` starts a comment.  Keys use underscores."""
    out: dict[str, str] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"{path}:{lineno}: empty key")
        out[key.replace("-", "_")] = value
    return out
