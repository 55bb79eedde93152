"""Structured JSON reports.

Top-level fields: ``tool_version``, ``format_version``, ``kind``, ``config`` and
``results``. Rationals are stored as ``{"num": ..., "den": ...}`` objects.
Output is canonical (sorted keys, fixed indentation) so identical runs give
byte-identical files.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import ReportParseError, ReportVersionError
from .harness import ComplexityReport

FORMAT_VERSION = 1
TOOL_VERSION = "0.1.0"


def encode(obj):
    if isinstance(obj, Fraction):
        return {"num": obj.numerator, "den": obj.denominator}
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    return obj


def decode(obj):
    if isinstance(obj, dict):
        if set(obj) == {"num", "den"}:
            return Fraction(obj["num"], obj["den"])
        return {k: decode(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [decode(v) for v in obj]
    return obj


def dumps_report(record, config: dict | None = None) -> str:
    if isinstance(record, ComplexityReport):
        kind, results = "complexity", record.to_dict()
    else:
        kind, results = "generic", record
    doc = {
        "tool_version": TOOL_VERSION,
        "format_version": FORMAT_VERSION,
        "kind": kind,
        "config": encode(config or {}),
        "results": encode(results),
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def write_report(record, path, config: dict | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_report(record, config))


def loads_document(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ReportParseError(f"malformed report: {exc}") from None
    if not isinstance(doc, dict) or "format_version" not in doc:
        raise ReportParseError("report lacks a format_version field")
    if doc["format_version"] != FORMAT_VERSION:
        raise ReportVersionError(
            f"report format_version {doc['format_version']} is not supported "
            f"(this tool reads version {FORMAT_VERSION}); regenerate the report"
        )
    for key in ("tool_version", "kind", "config", "results"):
        if key not in doc:
            raise ReportParseError(f"report lacks the {key!r} field")
    return doc


def read_document(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return loads_document(fh.read())


def load_report(path):
    """Load the record written by :func:`write_report` (a ComplexityReport or a dict)."""
    doc = read_document(path)
    results = decode(doc["results"])
    if doc["kind"] == "complexity":
        try:
            return ComplexityReport.from_dict(results)
        except TypeError as exc:
            raise ReportParseError(f"bad complexity report: {exc}") from None
    return results
