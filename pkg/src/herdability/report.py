"""Report assembly and canonical serialization."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .model import Status, SystemFile, Verdict


@dataclass
class Analysis:
    name: str
    status: str
    evidence: str
    witness: list | None = None
    data: dict | None = None

    @classmethod
    def from_verdict(cls, name, verdict: Verdict, data=None, witness=None):
        if witness is None and verdict.witness is not None:
            witness = verdict.witness
        merged = dict(verdict.detail)
        if data:
            merged.update(data)
        return cls(name, verdict.status.value, verdict.evidence,
                   None if witness is None else [float(x) for x in witness],
                   merged or None)

    def to_dict(self):
        out = {"name": self.name, "status": self.status, "evidence": self.evidence}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.data is not None:
            out["data"] = self.data
        return out


@dataclass
class Report:
    source: SystemFile
    analyses: list = field(default_factory=list)

    def add(self, analysis: Analysis):
        self.analyses.append(analysis)
        return analysis

    def to_dict(self):
        sys = self.source.system
        return {
            "system": {"n": sys.n, "m": sys.m, "mode": self.source.mode},
            "analyses": [a.to_dict() for a in self.analyses],
            "version": __version__,
            "input_sha256": self.source.sha256,
        }

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    def to_text(self) -> str:
        sys = self.source.system
        lines = [f"system: n={sys.n} m={sys.m} mode={self.source.mode}",
                 f"input_sha256: {self.source.sha256}",
                 f"version: {__version__}"]
        for a in self.analyses:
            lines.append("")
            lines.append(f"[{a.name}] {a.status} ({a.evidence})")
            if a.witness is not None:
                lines.append("  witness: " + " ".join(_fmt(x) for x in a.witness))
            data = jsonable(a.data or {})
            for key in sorted(data):
                lines.append(f"  {key}: {_plain(data[key])}")
        return "\n".join(lines) + "\n"


def _fmt(x: float) -> str:
    return format(x, ".6g")


def _plain(v):
    if isinstance(v, list) and v and isinstance(v[0], dict):
        return "\n" + "\n".join("    " + " ".join(f"{k}={_plain(x[k])}" for k in sorted(x))
                                for x in v)
    if isinstance(v, list):
        return "{" + ",".join(_plain(x) for x in v) + "}" if all(
            isinstance(x, int) for x in v) else "[" + ", ".join(_plain(x) for x in v) + "]"
    if isinstance(v, float):
        return _fmt(v)
    return str(v)


def jsonable(obj):
    """Convert numpy values, sets and tuples into plain JSON types."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted(jsonable(x) for x in obj)
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, Status):
        return obj.value
    return obj


def canonical_json(obj) -> str:
    """JSON with sorted keys, compact separators and 17-significant-digit floats.

    Parsing the output and serializing again yields the same bytes.
    """
    obj = jsonable(obj)

    def enc(v):
        if v is None or isinstance(v, bool):
            return json.dumps(v)
        if isinstance(v, int):
            return str(v)
        if isinstance(v, float):
            if not math.isfinite(v):
                raise ValueError("non-finite float in report")
            if v == 0:
                return "0"
            return format(v, ".17g")
        if isinstance(v, str):
            return json.dumps(v)
        if isinstance(v, list):
            return "[" + ",".join(enc(x) for x in v) + "]"
        if isinstance(v, dict):
            return "{" + ",".join(json.dumps(k) + ":" + enc(v[k]) for k in sorted(v)) + "}"
        raise TypeError(f"cannot serialize {type(v).__name__}")

    return enc(obj) + "\n"
