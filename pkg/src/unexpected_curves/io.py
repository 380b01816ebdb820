"""JSON documents for arrangements/configurations, and reproducible reports."""

from __future__ import annotations

import hashlib
import json
import sys
from dataclasses import dataclass, field
from typing import Any

from .arrangement import LineArrangement, PointConfiguration
from .errors import ArrangementError, DocumentError, DuplicateLineError
from .fields import Fp, field_from_json, field_to_json, scalar_from_json
from .geometry import ProjLine, ProjPoint

SCHEMA_VERSION = "1.0"
REPORT_SCHEMA_VERSION = "1.0"


@dataclass
class ArrangementDocument:
    field: int | None
    lines: tuple[ProjLine, ...] | None = None
    points: tuple[ProjPoint, ...] | None = None
    label: str | None = None
    notes: list[str] = field(default_factory=list)
    float_lines: list[list[float]] | None = None
    schema_version: str = SCHEMA_VERSION

    @property
    def kind(self) -> str:
        return "lines" if self.lines is not None else "points"

    def to_object(self):
        if self.lines is not None:
            return LineArrangement(self.lines, label=self.label, float_lines=self.float_lines)
        return PointConfiguration(self.points, label=self.label)

    def arrangement(self) -> LineArrangement:
        """The lines, dualizing a points document."""
        obj = self.to_object()
        return obj.dual() if isinstance(obj, PointConfiguration) else obj

    def configuration(self) -> PointConfiguration:
        """The points, dualizing a lines document."""
        obj = self.to_object()
        return obj.dual_configuration() if isinstance(obj, LineArrangement) else obj


def _scalar_text(c) -> str:
    return str(c.res) if isinstance(c, Fp) else str(c)


def _triples_to_json(items) -> list[list[str]]:
    return [[_scalar_text(c) for c in t.coords] for t in items]


def document_from(obj, notes: list[str] | None = None) -> ArrangementDocument:
    if isinstance(obj, LineArrangement):
        floats = [list(f) for f in obj.float_lines] if obj.float_lines else None
        if floats is not None and obj.p is None:
            floats = None  # recomputable from exact rationals
        return ArrangementDocument(obj.p, lines=obj.lines, label=obj.label, notes=list(notes or []),
                                   float_lines=floats)
    if isinstance(obj, PointConfiguration):
        return ArrangementDocument(obj.p, points=obj.points, label=obj.label, notes=list(notes or []))
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def document_to_json(doc: ArrangementDocument) -> dict:
    out: dict[str, Any] = {"schema-version": doc.schema_version, "field": field_to_json(doc.field)}
    if doc.label is not None:
        out["label"] = doc.label
    if doc.lines is not None:
        out["lines"] = _triples_to_json(doc.lines)
    else:
        out["points"] = _triples_to_json(doc.points)
    if doc.float_lines is not None:
        out["float-lines"] = [[round(x, 12) for x in f] for f in doc.float_lines]
    if doc.notes:
        out["notes"] = list(doc.notes)
    return out


def dumps(obj: Any) -> str:
    """Deterministic JSON text (sorted keys, fixed indentation, trailing newline)."""
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def serialize_document(obj, notes: list[str] | None = None) -> str:
    doc = obj if isinstance(obj, ArrangementDocument) else document_from(obj, notes)
    return dumps(document_to_json(doc))


def _parse_triples(raw, p, path: str, what: str):
    if not isinstance(raw, list) or not raw:
        raise DocumentError(f"expected a non-empty array of {what}", path)
    out = []
    cls = ProjLine if what == "lines" else ProjPoint
    for i, t in enumerate(raw):
        here = f"{path}[{i}]"
        if not isinstance(t, list) or len(t) != 3:
            raise DocumentError("expected a triple", here)
        coords = []
        for k, c in enumerate(t):
            try:
                coords.append(scalar_from_json(c, p))
            except (ValueError, TypeError, ArrangementError) as exc:
                raise DocumentError(str(exc), f"{here}[{k}]") from exc
        try:
            out.append(cls(coords))
        except (ValueError, ArrangementError) as exc:
            raise DocumentError(str(exc), here) from exc
    return out


def parse_document(data: bytes | str) -> ArrangementDocument:
    """Validate a document; errors carry a JSON path such as ``$.lines[3][1]``."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DocumentError(f"not UTF-8: {exc}") from exc
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc.msg} (line {exc.lineno}, column {exc.colno})") from exc
    if not isinstance(obj, dict):
        raise DocumentError("expected an object")
    version = obj.get("schema-version", SCHEMA_VERSION)
    if not isinstance(version, str) or version.split(".")[0] != SCHEMA_VERSION.split(".")[0]:
        raise DocumentError(f"unsupported schema-version {version!r}", "$.schema-version")
    try:
        p = field_from_json(obj.get("field", "QQ"))
    except (ValueError, TypeError) as exc:
        raise DocumentError(str(exc), "$.field") from exc
    has_lines, has_points = "lines" in obj, "points" in obj
    if has_lines == has_points:
        raise DocumentError("exactly one of 'lines' or 'points' is required")
    label = obj.get("label")
    if label is not None and not isinstance(label, str):
        raise DocumentError("label must be a string", "$.label")
    notes = obj.get("notes", [])
    if not isinstance(notes, list) or not all(isinstance(n, str) for n in notes):
        raise DocumentError("notes must be an array of strings", "$.notes")
    key = "lines" if has_lines else "points"
    items = _parse_triples(obj[key], p, f"$.{key}", key)
    seen: dict = {}
    for i, t in enumerate(items):
        if t in seen:
            msg = f"$.{key}[{seen[t]}] and $.{key}[{i}] coincide after normalization"
            if has_lines:
                raise DuplicateLineError(msg, (seen[t], i))
            raise DocumentError(msg, f"$.{key}[{i}]")
        seen[t] = i
    floats = obj.get("float-lines")
    if floats is not None:
        if (not has_lines or not isinstance(floats, list) or len(floats) != len(items)
                or not all(isinstance(f, list) and len(f) == 3 for f in floats)):
            raise DocumentError("float-lines must be one triple per line", "$.float-lines")
        floats = [[float(x) for x in f] for f in floats]
    return ArrangementDocument(p, lines=tuple(items) if has_lines else None,
                               points=None if has_lines else tuple(items), label=label,
                               notes=notes, float_lines=floats, schema_version=version)


def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def write_text(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def load_document(path: str) -> ArrangementDocument:
    return parse_document(read_text(path))


def digest(doc: ArrangementDocument) -> str:
    """SHA-256 of the canonical serialization."""
    return hashlib.sha256(dumps(document_to_json(doc)).encode("utf-8")).hexdigest()


def make_report(command: str, doc: ArrangementDocument | None, results: dict, *, seed: int,
                samples: int, primes: Any, timing: dict | None = None) -> dict:
    """Self-contained report; ``timing`` is omitted unless given, keeping output byte-stable."""
    report: dict[str, Any] = {
        "schema-version": REPORT_SCHEMA_VERSION,
        "command": command,
        "seed": seed,
        "samples": samples,
        "primes": primes,
        "results": results,
    }
    if doc is not None:
        report["input"] = {"digest": digest(doc), "label": doc.label, "kind": doc.kind,
                           "size": len(doc.lines if doc.lines is not None else doc.points),
                           "field": field_to_json(doc.field)}
    if timing is not None:
        report["timing"] = timing
    return report
