"""Strict herdability from the column signs of a numeric controllability matrix.

A state is strictly herdable when some unisigned vector of the reachable
subspace is nonzero there. Any unisigned column of ``C`` is such a vector;
a state only seen in balanced columns is still strictly herdable if one of
those columns opposes it only with states already known to be strictly
herdable (they can be lifted with their own unisigned vectors). If every
state ends up strictly herdable the system is completely herdable. The
converse fails, so anything short of full coverage is ``Unknown``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .model import Status, Verdict

__all__ = [
    "ColumnClass",
    "StrictSets",
    "column_signs",
    "classify_columns",
    "strictly_herdable_base",
    "balancing_fixpoint",
    "verdict_from_columns",
]


class ColumnClass(str, enum.Enum):
    ZERO = "Zero"
    POSITIVE = "PositiveUnisigned"
    NEGATIVE = "NegativeUnisigned"
    BALANCED = "Balanced"


@dataclass(frozen=True)
class StrictSets:
    """1-based index sets: ``s`` strictly herdable, ``d`` the rest.

    ``unknown`` lists the states of ``d`` the balancing closure could not
    resolve; ``passes`` counts closure sweeps.
    """

    s: frozenset
    d: frozenset
    unknown: frozenset
    passes: int = 0


def column_signs(c, tol=1e-9) -> np.ndarray:
    """Entry signs of ``c`` with a noise floor of ``tol`` times the column max."""
    c = np.atleast_2d(np.asarray(c, dtype=float))
    colmax = np.max(np.abs(c), axis=0) if c.size else np.zeros(c.shape[1])
    signs = np.sign(c).astype(np.int8)
    signs[np.abs(c) <= tol * colmax] = 0
    # a column negligible against the whole matrix is zero as well
    signs[:, colmax <= tol * (np.max(colmax) if colmax.size else 0.0)] = 0
    return signs


def classify_columns(c, tol=1e-9) -> list:
    """Classify every column as zero, positive/negative unisigned or balanced."""
    out = []
    for col in column_signs(c, tol).T:
        pos = bool(np.any(col > 0))
        neg = bool(np.any(col < 0))
        if pos and neg:
            out.append(ColumnClass.BALANCED)
        elif pos:
            out.append(ColumnClass.POSITIVE)
        elif neg:
            out.append(ColumnClass.NEGATIVE)
        else:
            out.append(ColumnClass.ZERO)
    return out


def strictly_herdable_base(c, tol=1e-9) -> StrictSets:
    signs = column_signs(c, tol)
    n = signs.shape[0]
    s = set()
    for col, kind in zip(signs.T, classify_columns(c, tol)):
        if kind in (ColumnClass.POSITIVE, ColumnClass.NEGATIVE):
            s.update(int(i) + 1 for i in np.flatnonzero(col))
    s = frozenset(s)
    d = frozenset(range(1, n + 1)) - s
    return StrictSets(s, d, d)


def balancing_fixpoint(c, base: StrictSets | None = None, tol=1e-9,
                       order=None) -> StrictSets:
    """Grow the strictly herdable set by the balancing rule until it is stable.

    State ``l`` is promoted when some column has a nonzero entry at ``l``
    and every entry of opposite sign in that column belongs to a state
    already in the set. Each sweep visits candidates in ``order`` (default
    ascending); the closure does not depend on it.
    """
    signs = column_signs(c, tol)
    n = signs.shape[0]
    if base is None:
        base = strictly_herdable_base(c, tol)
    s = set(base.s)
    order = list(order) if order is not None else list(range(1, n + 1))
    passes = 0
    changed = True
    while changed and passes < n:
        changed = False
        passes += 1
        for l in order:
            if l in s:
                continue
            row = signs[l - 1]
            for j in np.flatnonzero(row):
                opposing = np.flatnonzero(signs[:, j] == -row[j]) + 1
                if all(int(z) in s for z in opposing):
                    s.add(l)
                    changed = True
                    break
    s = frozenset(s)
    d = frozenset(range(1, n + 1)) - s
    return StrictSets(s, d, d, passes)


def verdict_from_columns(c, tol=1e-9) -> Verdict:
    base = strictly_herdable_base(c, tol)
    n = np.atleast_2d(c).shape[0]
    if len(base.s) == n:
        return Verdict(Status.HERDABLE, "unisigned-columns",
                       detail={"strict": sorted(base.s)})
    closed = balancing_fixpoint(c, base, tol)
    if len(closed.s) == n:
        return Verdict(Status.HERDABLE, "unisigned-columns+balancing-closure",
                       detail={"strict": sorted(closed.s), "base": sorted(base.s)})
    return Verdict(Status.UNKNOWN, "column-tests-inconclusive",
                   detail={"strict": sorted(closed.s), "unresolved": sorted(closed.unknown)})
