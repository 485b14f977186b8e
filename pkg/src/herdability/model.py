"""System, sign pattern and signed graph representations.

State and input nodes are numbered from 1 in everything user facing
(``x1..xn``, ``u1..um``); arrays are indexed from 0 as usual.
"""

from __future__ import annotations

import enum
import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Optional

import numpy as np

from .exceptions import InputError

__all__ = [
    "LtiSystem",
    "SignPattern",
    "Edge",
    "SignedGraph",
    "Status",
    "Verdict",
    "SystemFile",
    "build_graph",
    "sign_of",
    "pattern_of_graph",
    "parse_system",
    "load_system",
]


def _frozen(arr) -> np.ndarray:
    out = np.array(arr, dtype=float, copy=True)
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class LtiSystem:
    """Continuous-time system ``dx/dt = A x + B u``.

    Parameters
    ----------
    a : (n, n) array_like
        State matrix.
    b : (n, m) array_like
        Input matrix. A 1-D array is read as a single input column.
    """

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.atleast_2d(np.asarray(self.a, dtype=float))
        b = np.asarray(self.b, dtype=float)
        if b.ndim == 1:
            b = b[:, None]
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InputError(f"A must be square, got shape {a.shape}", field="A")
        if b.ndim != 2 or b.shape[0] != a.shape[0]:
            raise InputError(
                f"B must have {a.shape[0]} rows, got shape {b.shape}", field="B")
        if b.shape[1] < 1:
            raise InputError("B must have at least one column", field="B")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise InputError("A and B entries must be finite")
        object.__setattr__(self, "a", _frozen(a))
        object.__setattr__(self, "b", _frozen(b))

    @property
    def n(self) -> int:
        return self.a.shape[0]

    @property
    def m(self) -> int:
        return self.b.shape[1]

    def __eq__(self, other):
        if not isinstance(other, LtiSystem):
            return NotImplemented
        return np.array_equal(self.a, other.a) and np.array_equal(self.b, other.b)

    def __repr__(self):
        return f"LtiSystem(n={self.n}, m={self.m})"


@dataclass(frozen=True, eq=False)
class SignPattern:
    """Sign pattern ``(sgn A, sgn B)`` describing a class of systems."""

    sa: np.ndarray
    sb: np.ndarray

    def __post_init__(self):
        sa = np.atleast_2d(np.asarray(self.sa))
        sb = np.asarray(self.sb)
        if sb.ndim == 1:
            sb = sb[:, None]
        if sa.ndim != 2 or sa.shape[0] != sa.shape[1] or sb.shape[0] != sa.shape[0]:
            raise InputError(f"incompatible pattern shapes {sa.shape}, {sb.shape}")
        for name, arr in (("A", sa), ("B", sb)):
            if not np.all(np.isin(arr, (-1, 0, 1))):
                raise InputError("pattern entries must be in {-1, 0, 1}", field=name)
        sa = sa.astype(np.int8)
        sb = sb.astype(np.int8)
        sa.flags.writeable = False
        sb.flags.writeable = False
        object.__setattr__(self, "sa", sa)
        object.__setattr__(self, "sb", sb)

    @property
    def n(self) -> int:
        return self.sa.shape[0]

    @property
    def m(self) -> int:
        return self.sb.shape[1]

    def unit_realization(self) -> LtiSystem:
        """The realization with every nonzero magnitude equal to one."""
        return LtiSystem(self.sa.astype(float), self.sb.astype(float))

    def __eq__(self, other):
        if not isinstance(other, SignPattern):
            return NotImplemented
        return (np.array_equal(self.sa, other.sa)
                and np.array_equal(self.sb, other.sb))

    def __hash__(self):
        return hash((self.sa.tobytes(), self.sb.tobytes(), self.sa.shape, self.sb.shape))

    def __repr__(self):
        return f"SignPattern(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Edge:
    """Directed edge. Node ids are strings ``"x3"`` or ``"u1"``."""

    source: str
    target: str
    sign: int
    weight: Optional[float] = None


@dataclass(frozen=True)
class SignedGraph:
    """Signed (optionally weighted) directed graph of a system.

    An edge ``x_i -> x_j`` exists iff ``A[j, i] != 0`` and ``u_i -> x_j``
    iff ``B[j, i] != 0``, carrying the sign (and weight) of that entry.
    """

    n: int
    m: int
    edges: tuple = ()

    @property
    def state_nodes(self) -> list:
        return [f"x{i}" for i in range(1, self.n + 1)]

    @property
    def input_nodes(self) -> list:
        return [f"u{j}" for j in range(1, self.m + 1)]

    @property
    def nodes(self) -> list:
        return self.input_nodes + self.state_nodes

    @property
    def weighted(self) -> bool:
        return bool(self.edges) and all(e.weight is not None for e in self.edges)

    def successors(self, node: str) -> Iterator[Edge]:
        return (e for e in self.edges if e.source == node)

    def in_degree(self, node: str) -> int:
        return sum(1 for e in self.edges if e.target == node)


def node_index(node: str) -> int:
    """0-based position of ``"x3"``/``"u3"`` style ids (``2`` for both)."""
    return int(node[1:]) - 1


def build_graph(sys: LtiSystem) -> SignedGraph:
    """Signed, weighted graph of ``sys``.

    Edges are listed input edges first, then state edges, each in
    column-major order of the defining matrix. Zero tests are exact.
    """
    edges = []
    for j in range(sys.m):
        for i in range(sys.n):
            w = sys.b[i, j]
            if w != 0.0:
                edges.append(Edge(f"u{j + 1}", f"x{i + 1}", int(np.sign(w)), float(w)))
    for k in range(sys.n):
        for i in range(sys.n):
            w = sys.a[i, k]
            if w != 0.0:
                edges.append(Edge(f"x{k + 1}", f"x{i + 1}", int(np.sign(w)), float(w)))
    return SignedGraph(sys.n, sys.m, tuple(edges))


def sign_of(sys: LtiSystem) -> SignPattern:
    return SignPattern(np.sign(sys.a).astype(np.int8), np.sign(sys.b).astype(np.int8))


def pattern_of_graph(g: SignedGraph) -> SignPattern:
    """Inverse of :func:`build_graph` at the sign level."""
    sa = np.zeros((g.n, g.n), dtype=np.int8)
    sb = np.zeros((g.n, g.m), dtype=np.int8)
    for e in g.edges:
        i = node_index(e.target)
        k = node_index(e.source)
        if e.source.startswith("u"):
            sb[i, k] = e.sign
        else:
            sa[i, k] = e.sign
    return SignPattern(sa, sb)


class Status(str, enum.Enum):
    HERDABLE = "Herdable"
    NOT_HERDABLE = "NotHerdable"
    UNKNOWN = "Unknown"


@dataclass(frozen=True, eq=False)
class Verdict:
    """Three-valued herdability result.

    ``witness`` is a coefficient vector ``alpha`` with
    ``(M @ alpha)[i] >= 1`` on ``targets`` (1-based) for the matrix ``M``
    the verdict was computed from. ``evidence`` tags the rule that fired.
    """

    status: Status
    evidence: str
    witness: Optional[np.ndarray] = None
    targets: Optional[tuple] = None
    detail: dict = field(default_factory=dict)

    @property
    def herdable(self) -> bool:
        return self.status is Status.HERDABLE

    def __repr__(self):
        return f"Verdict({self.status.value}, evidence={self.evidence!r})"


@dataclass(frozen=True)
class SystemFile:
    """A parsed system document."""

    system: LtiSystem
    mode: str
    sha256: str

    @property
    def pattern(self) -> SignPattern:
        return sign_of(self.system)


def _matrix(doc, key, ncols=None):
    if key not in doc:
        raise InputError(f"missing field {key!r}", field=key)
    rows = doc[key]
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InputError(f"field {key!r} must be a non-empty array of rows", field=key)
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise InputError(f"field {key!r} has ragged rows", field=key)
    if ncols is not None and width != ncols:
        raise InputError(f"field {key!r} must have {ncols} columns, got {width}", field=key)
    for r in rows:
        for v in r:
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise InputError(f"field {key!r} has a non-numeric entry {v!r}", field=key)
    arr = np.array(rows, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise InputError(f"field {key!r} has non-finite entries", field=key)
    return arr


def parse_system(doc, digest: str = "") -> SystemFile:
    """Validate a decoded JSON system document."""
    if not isinstance(doc, dict):
        raise InputError("system document must be a JSON object")
    mode = doc.get("mode", "weighted")
    if mode not in ("weighted", "pattern"):
        raise InputError(f"mode must be 'weighted' or 'pattern', got {mode!r}", field="mode")
    a = _matrix(doc, "A")
    n = a.shape[0]
    if a.shape != (n, n):
        raise InputError(f"field 'A' must be square, got {a.shape[0]}x{a.shape[1]}", field="A")
    b = _matrix(doc, "B")
    if b.shape[0] != n:
        raise InputError(f"field 'B' must have {n} rows, got {b.shape[0]}", field="B")
    if mode == "pattern":
        for key, arr in (("A", a), ("B", b)):
            if not np.all(np.isin(arr, (-1.0, 0.0, 1.0))):
                raise InputError(
                    f"field {key!r} must contain only -1, 0, 1 in pattern mode", field=key)
    return SystemFile(LtiSystem(a, b), mode, digest)


def load_system(path) -> SystemFile:
    raw = Path(path).read_bytes()
    digest = hashlib.sha256(raw).hexdigest()
    try:
        doc = json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise InputError(f"not valid JSON: {exc}") from exc
    return parse_system(doc, digest)
