"""Serialization of reports: JSON documents with a run manifest, and CSV."""

from __future__ import annotations

import csv
import datetime as _dt
import hashlib
import io
import json
import math
import shlex
from typing import Iterable, Sequence

__all__ = [
    "clean_json",
    "canonical_bytes",
    "digest",
    "make_manifest",
    "document",
    "dumps_document",
    "verify_document",
    "csv_text",
    "BOUND_FIELDS",
    "BOUND_RECORD_SCHEMA",
    "EXTREMAL_SCHEMA",
    "MANIFEST_SCHEMA",
    "document_schema",
]


def clean_json(obj):
    """Make ``obj`` JSON-safe: numpy scalars to Python, non-finite floats to None."""
    if isinstance(obj, dict):
        return {str(k): clean_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [clean_json(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return int(obj)
    if hasattr(obj, "item"):
        obj = obj.item()
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    return obj


def canonical_bytes(payload) -> bytes:
    return json.dumps(clean_json(payload), sort_keys=True, separators=(",", ":"),
                      ensure_ascii=False).encode("utf-8")


def digest(data: bytes | str) -> str:
    if isinstance(data, str):
        data = data.encode("utf-8")
    return hashlib.sha256(data).hexdigest()


def make_manifest(argv: Sequence[str], seed, grid, version: str, data: bytes,
                  timestamp: str | None = None) -> dict:
    if timestamp is None:
        timestamp = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
    return {
        "command": shlex.join(argv),
        "seed": seed,
        "grid": grid,
        "version": version,
        "timestamp": timestamp,
        "digest": digest(data),
    }


def document(payload, argv, seed, grid, version) -> dict:
    payload = clean_json(payload)
    return {"manifest": make_manifest(argv, seed, grid, version, canonical_bytes(payload)),
            "payload": payload}


def dumps_document(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def verify_document(doc: dict) -> bool:
    """Recompute the manifest digest over the payload."""
    return digest(canonical_bytes(doc["payload"])) == doc["manifest"]["digest"]


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v) if math.isfinite(v) else ""
    return str(v)


def csv_text(rows: Iterable[dict], fields: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(fields)
    for row in rows:
        w.writerow([_cell(row.get(f)) for f in fields])
    return buf.getvalue()


# --- schemas ------------------------------------------------------------------

_num = {"type": ["number", "null"]}
_case = {"type": ["string", "null"], "enum": ["small-sigma", "large-sigma", "degenerate", None]}

BOUND_FIELDS = ("delta", "t", "m", "r", "printed_a2", "printed_a3", "derived_a2",
                "derived_a3", "sigma_printed", "sigma_derived", "fs_printed",
                "fs_derived", "fs_case")

BOUND_RECORD_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": list(BOUND_FIELDS),
    "properties": {
        "delta": {"type": "number", "minimum": 1},
        "t": {"type": "number", "exclusiveMinimum": 0.5, "exclusiveMaximum": 1},
        "m": {"type": "integer", "minimum": 0},
        "r": _num,
        "printed_a2": _num,
        "printed_a3": _num,
        "derived_a2": _num,
        "derived_a3": _num,
        "sigma_printed": _num,
        "sigma_derived": _num,
        "fs_printed": _num,
        "fs_derived": _num,
        "fs_case": {
            "oneOf": [
                {"type": "null"},
                {"type": "object", "additionalProperties": False,
                 "required": ["printed", "derived"],
                 "properties": {"printed": _case, "derived": _case}},
            ]
        },
    },
}

_complex = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}

EXTREMAL_SCHEMA = {
    "type": "object",
    "required": ["functional", "r", "mode", "delta", "t", "m", "empirical_max", "argmax",
                 "bound_printed", "bound_derived", "margin_derived",
                 "violation_printed", "violation_derived", "seed", "samples",
                 "feasible_samples", "no_feasible_sample"],
    "properties": {
        "functional": {"enum": ["a2", "a3", "fs"]},
        "r": _num,
        "mode": {"enum": ["paper", "schur"]},
        "delta": {"type": "number"},
        "t": {"type": "number"},
        "m": {"type": "integer"},
        "empirical_max": {"type": "number", "minimum": 0},
        "argmax": {
            "oneOf": [
                {"type": "null"},
                {"type": "object", "required": ["p1", "p2", "q1", "q2", "mode"],
                 "properties": {"p1": _complex, "p2": _complex, "q1": _complex,
                                "q2": _complex, "mode": {"enum": ["paper", "schur"]}}},
            ]
        },
        "bound_printed": _num,
        "bound_derived": {"type": "number"},
        "margin_derived": {"type": "number"},
        "violation_printed": {"type": ["boolean", "null"]},
        "violation_derived": {"type": "boolean"},
        "seed": {"type": "integer"},
        "samples": {"type": "integer", "minimum": 1},
        "feasible_samples": {"type": "integer", "minimum": 0},
        "no_feasible_sample": {"type": "boolean"},
    },
}

MANIFEST_SCHEMA = {
    "type": "object",
    "additionalProperties": False,
    "required": ["command", "seed", "grid", "version", "timestamp", "digest"],
    "properties": {
        "command": {"type": "string"},
        "seed": {"type": ["integer", "null"]},
        "grid": {"type": "object"},
        "version": {"type": "string"},
        "timestamp": {"type": "string"},
        "digest": {"type": "string", "pattern": "^[0-9a-f]{64}$"},
    },
}


def document_schema(payload_schema: dict) -> dict:
    return {
        "type": "object",
        "additionalProperties": False,
        "required": ["manifest", "payload"],
        "properties": {"manifest": MANIFEST_SCHEMA, "payload": payload_schema},
    }
