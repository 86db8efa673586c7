"""Serialization of command results to CSV and JSON.

An :class:`OutputRecord` is written either as one JSON object or as CSV.
The CSV form carries the non-tabular fields in ``#``-prefixed metadata
lines ahead of the header row, plus a column type line, so that
``parse(emit(x)) == x`` holds for both formats.

Cell types: ``int``, ``float`` (written with ``repr`` so they round-trip
exactly), ``str``, ``bool`` and ``json`` (lists, dicts and ``None``).
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from typing import Any

SCHEMA_VERSION = "1.0"
META_PREFIX = "# "
FORMATS = ("csv", "json")


@dataclass
class OutputRecord:
    command: str
    params: dict[str, Any]
    payload: list[dict[str, Any]]
    provenance: dict[str, Any] = field(default_factory=dict)
    schema_version: str = SCHEMA_VERSION

    def columns(self) -> list[str]:
        return list(self.payload[0]) if self.payload else []


def _json_safe(x):
    # NaN/inf are not JSON; encode as strings and decode on parse
    if isinstance(x, float) and not math.isfinite(x):
        return {"__float__": repr(x)}
    if isinstance(x, dict):
        return {k: _json_safe(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json_safe(v) for v in x]
    return x


def _json_restore(x):
    if isinstance(x, dict):
        if set(x) == {"__float__"}:
            return float(x["__float__"])
        return {k: _json_restore(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_json_restore(v) for v in x]
    return x


def _dumps(obj, **kw) -> str:
    return json.dumps(_json_safe(obj), ensure_ascii=False, allow_nan=False, **kw)


def to_json(record: OutputRecord) -> str:
    return _dumps(asdict(record), indent=2) + "\n"


def from_json(text: str) -> OutputRecord:
    d = _json_restore(json.loads(text))
    return OutputRecord(
        command=d["command"],
        params=d["params"],
        payload=d["payload"],
        provenance=d["provenance"],
        schema_version=d["schema_version"],
    )


def _cell_type(v) -> str:
    if isinstance(v, bool):
        return "bool"
    if isinstance(v, int):
        return "int"
    if isinstance(v, float):
        return "float"
    if isinstance(v, str):
        return "str"
    return "json"


def _encode(v, kind: str) -> str:
    if kind == "bool":
        return "true" if v else "false"
    if kind in ("int", "str"):
        return str(v)
    if kind == "float":
        return repr(float(v))
    return _dumps(v, separators=(",", ":"))


def _decode(s: str, kind: str):
    if kind == "bool":
        return s == "true"
    if kind == "int":
        return int(s)
    if kind == "float":
        return float(s)
    if kind == "str":
        return s
    return _json_restore(json.loads(s))


def to_csv(record: OutputRecord) -> str:
    cols = record.columns()
    if any(set(row) != set(cols) for row in record.payload):
        raise ValueError("CSV payload rows must share one set of columns")
    types = {}
    for c in cols:
        kinds = {_cell_type(row[c]) for row in record.payload}
        types[c] = kinds.pop() if len(kinds) == 1 else "json"
    buf = io.StringIO()
    for key in ("schema_version", "command", "params", "provenance"):
        buf.write(f"{META_PREFIX}{key}: {_dumps(getattr(record, key), separators=(',', ':'))}\n")
    buf.write(f"{META_PREFIX}types: {_dumps([types[c] for c in cols], separators=(',', ':'))}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for row in record.payload:
        w.writerow([_encode(row[c], types[c]) for c in cols])
    return buf.getvalue()


def from_csv(text: str) -> OutputRecord:
    meta: dict[str, Any] = {}
    # split on LF only: str.splitlines would also break on U+0085, U+2028, ...
    lines = text.split("\n")
    i = 0
    while i < len(lines) and lines[i].startswith(META_PREFIX):
        key, _, value = lines[i][len(META_PREFIX):].partition(": ")
        meta[key] = _json_restore(json.loads(value))
        i += 1
    rows = list(csv.reader(io.StringIO("\n".join(lines[i:]), newline="")))
    payload = []
    if rows:
        cols, types = rows[0], meta["types"]
        for raw in rows[1:]:
            payload.append({c: _decode(s, t) for c, s, t in zip(cols, raw, types)})
    return OutputRecord(
        command=meta["command"],
        params=meta["params"],
        payload=payload,
        provenance=meta["provenance"],
        schema_version=meta["schema_version"],
    )


def emit(record: OutputRecord, fmt: str = "csv") -> str:
    if fmt == "csv":
        return to_csv(record)
    if fmt == "json":
        return to_json(record)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def parse(text: str, fmt: str = "csv") -> OutputRecord:
    if fmt == "csv":
        return from_csv(text)
    if fmt == "json":
        return from_json(text)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def write(record: OutputRecord, fmt: str = "csv", path: str | None = None) -> None:
    text = emit(record, fmt)
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
