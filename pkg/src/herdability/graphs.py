"""Sign-pattern analyses on the signed system graph.

Entry ``(i, m(d-1)+j)`` of the controllability matrix sums the weight
products of all length-``d`` walks from input ``u_j`` to state ``x_i``.
Tracking, per depth and input, which states are hit by at least one
positive walk (``P``) and by at least one negative walk (``N``) therefore
tells which entries keep their sign for every choice of weights.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .model import (LtiSystem, SignedGraph, SignPattern, Status, Verdict,
                    build_graph, pattern_of_graph)

__all__ = [
    "SignedReachSets",
    "BalanceCertificate",
    "input_connectable",
    "not_herdable_by_connectability",
    "is_positive_system",
    "positive_system_check",
    "structural_balance",
    "signed_reach_sets",
    "sign_definite_c",
    "structurally_balanced_implies_sign_definite",
    "sign_strictly_herdable",
    "sign_balanced_closure",
]


def _as_graph(g) -> SignedGraph:
    return build_graph(g) if isinstance(g, LtiSystem) else g


def _as_pattern(p) -> SignPattern:
    if isinstance(p, SignPattern):
        return p
    if isinstance(p, SignedGraph):
        return pattern_of_graph(p)
    return SignPattern(np.sign(p.a), np.sign(p.b))


def input_connectable(g) -> tuple[bool, frozenset]:
    """Multi-source BFS from all inputs.

    Returns
    -------
    connectable : bool
    unreachable : frozenset of int
        1-based indices of states no input reaches.
    """
    g = _as_graph(g)
    adj = {}
    for e in g.edges:
        adj.setdefault(e.source, []).append(e.target)
    seen = set(g.input_nodes)
    queue = deque(g.input_nodes)
    while queue:
        v = queue.popleft()
        for w in adj.get(v, ()):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    unreachable = frozenset(i for i in range(1, g.n + 1) if f"x{i}" not in seen)
    return not unreachable, unreachable


def not_herdable_by_connectability(g) -> Verdict:
    ok, unreachable = input_connectable(g)
    if ok:
        return Verdict(Status.UNKNOWN, "input-connectable")
    return Verdict(Status.NOT_HERDABLE, "not-input-connectable",
                   detail={"unreachable": sorted(unreachable)})


def is_positive_system(sys: LtiSystem) -> bool:
    """Metzler ``A`` (nonnegative off the diagonal) and elementwise ``B >= 0``."""
    off = sys.a[~np.eye(sys.n, dtype=bool)]
    return bool(np.all(off >= 0) and np.all(sys.b >= 0))


def positive_system_check(sys: LtiSystem) -> Verdict:
    """For positive systems herdability is exactly input connectability."""
    if not is_positive_system(sys):
        return Verdict(Status.UNKNOWN, "not-positive-system")
    ok, unreachable = input_connectable(sys)
    if ok:
        return Verdict(Status.HERDABLE, "positive-system-connectable")
    return Verdict(Status.NOT_HERDABLE, "positive-system-not-connectable",
                   detail={"unreachable": sorted(unreachable)})


@dataclass(frozen=True)
class BalanceCertificate:
    """Outcome of the structural balance test.

    ``partition`` maps node ids to camp 0/1 when balanced. Otherwise
    ``violating_semicycle`` is a closed list of ``(node, sign, node)``
    steps, ignoring edge direction, with an odd number of negative signs.
    """

    balanced: bool
    partition: dict | None = None
    violating_semicycle: tuple | None = None


class _ParityUnionFind:
    def __init__(self, items):
        self.parent = {v: v for v in items}
        self.parity = {v: 0 for v in items}
        self.rank = {v: 0 for v in items}

    def find(self, v):
        path = []
        while self.parent[v] != v:
            path.append(v)
            v = self.parent[v]
        root = v
        # compress, accumulating parity to the root
        acc = 0
        for u in reversed(path):
            acc ^= self.parity[u]
            self.parity[u] = acc
            self.parent[u] = root
        return root

    def parity_to_root(self, v):
        self.find(v)
        return self.parity[v] if self.parent[v] != v else 0

    def union(self, a, b, odd):
        ra, rb = self.find(a), self.find(b)
        pa, pb = self.parity_to_root(a), self.parity_to_root(b)
        if ra == rb:
            return (pa ^ pb) == odd
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.parity[rb] = pa ^ pb ^ odd
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True


def _forest_path(forest, start, goal):
    prev = {start: None}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        if v == goal:
            break
        for w, sign in forest.get(v, ()):
            if w not in prev:
                prev[w] = (v, sign)
                queue.append(w)
    steps = []
    v = goal
    while prev[v] is not None:
        u, sign = prev[v]
        steps.append((u, sign, v))
        v = u
    return list(reversed(steps))


def structural_balance(g) -> BalanceCertificate:
    """Two-camp test on the undirected signed graph (inputs and states).

    Positive edges join nodes of the same camp, negative edges nodes of
    opposite camps. A parity union-find settles this in near-linear time;
    the first conflicting edge closes a negative semi-cycle through the
    spanning forest built so far.
    """
    g = _as_graph(g)
    uf = _ParityUnionFind(g.nodes)
    forest = {}
    for e in g.edges:
        odd = 1 if e.sign < 0 else 0
        if uf.find(e.source) == uf.find(e.target):
            if not uf.union(e.source, e.target, odd):
                steps = _forest_path(forest, e.target, e.source)
                cycle = tuple(steps) + ((e.source, e.sign, e.target),)
                return BalanceCertificate(False, violating_semicycle=cycle)
            continue
        uf.union(e.source, e.target, odd)
        forest.setdefault(e.source, []).append((e.target, e.sign))
        forest.setdefault(e.target, []).append((e.source, e.sign))
    partition = {v: uf.parity_to_root(v) for v in g.nodes}
    return BalanceCertificate(True, partition=partition)


@dataclass(frozen=True)
class SignedReachSets:
    """Boolean tables ``pos[d-1, i, j]`` / ``neg[d-1, i, j]``.

    ``pos[d-1, i, j]`` is true when some positive walk of length ``d`` runs
    from input ``j+1`` to state ``i+1``.
    """

    pos: np.ndarray
    neg: np.ndarray

    @property
    def max_depth(self) -> int:
        return self.pos.shape[0]

    def p(self, d, j) -> frozenset:
        """1-based states in ``P_d^j``."""
        return frozenset(int(i) + 1 for i in np.flatnonzero(self.pos[d - 1, :, j - 1]))

    def n(self, d, j) -> frozenset:
        """1-based states in ``N_d^j``."""
        return frozenset(int(i) + 1 for i in np.flatnonzero(self.neg[d - 1, :, j - 1]))


def signed_reach_sets(p, max_depth=None) -> SignedReachSets:
    """Boolean propagation of walk signs, depths ``1..max_depth`` (default ``n``)."""
    p = _as_pattern(p)
    n, m = p.n, p.m
    if max_depth is None:
        max_depth = n
    if not 1 <= max_depth <= max(n, 1):
        raise ValueError(f"max_depth must be in 1..{n}, got {max_depth}")
    a_pos = (p.sa > 0).astype(np.int64)
    a_neg = (p.sa < 0).astype(np.int64)
    pos = np.zeros((max_depth, n, m), dtype=bool)
    neg = np.zeros((max_depth, n, m), dtype=bool)
    pos[0] = p.sb > 0
    neg[0] = p.sb < 0
    for d in range(1, max_depth):
        pp, nn = pos[d - 1].astype(np.int64), neg[d - 1].astype(np.int64)
        pos[d] = (a_pos @ pp + a_neg @ nn) > 0
        neg[d] = (a_pos @ nn + a_neg @ pp) > 0
    pos.flags.writeable = False
    neg.flags.writeable = False
    return SignedReachSets(pos, neg)


def sign_definite_c(p) -> tuple[bool, list]:
    """Whether every realization gives the same sign pattern for ``C``.

    An entry is ambiguous when both a positive and a negative walk reach it,
    regardless of whether a particular realization makes it nonzero.

    Returns
    -------
    definite : bool
    offending : list of (i, d, j)
        1-based state, depth and input of every ambiguous entry.
    """
    rs = signed_reach_sets(p)
    both = rs.pos & rs.neg
    offending = [(int(i) + 1, int(d) + 1, int(j) + 1)
                 for d, i, j in zip(*np.nonzero(both))]
    offending.sort()
    return not offending, offending


def structurally_balanced_implies_sign_definite(g) -> bool:
    """Sign-definiteness of ``C``, skipping the reach sets for balanced graphs."""
    g = _as_graph(g)
    if structural_balance(g).balanced:
        return True
    return sign_definite_c(pattern_of_graph(g))[0]


def _qualifying_slots(rs):
    # (d, j) whose P and N sets are not both nonempty and not both empty
    has_p = rs.pos.any(axis=1)
    has_n = rs.neg.any(axis=1)
    return has_p ^ has_n


def sign_strictly_herdable(p) -> frozenset:
    """States reached at some ``(d, j)`` where only one of ``P``, ``N`` is nonempty."""
    rs = signed_reach_sets(p)
    ok = _qualifying_slots(rs)
    hit = (rs.pos | rs.neg) & ok[:, None, :]
    return frozenset(int(i) + 1 for i in np.flatnonzero(hit.any(axis=(0, 2))))


def sign_balanced_closure(p) -> Verdict:
    """Fixpoint of the sign-balanced rule, seeded with the sign strictly herdable states.

    A state joins when some ``(d, j)`` reaches it with one sign only and
    every state reached there with the opposite sign has already joined.
    """
    p = _as_pattern(p)
    rs = signed_reach_sets(p)
    seed = sign_strictly_herdable(p)
    s = set(seed)
    n = p.n
    changed = True
    while changed:
        changed = False
        for i in range(n):
            if i + 1 in s:
                continue
            for d in range(rs.max_depth):
                for j in range(p.m):
                    ip, inn = rs.pos[d, i, j], rs.neg[d, i, j]
                    if ip == inn:
                        continue
                    opposing = rs.neg[d, :, j] if ip else rs.pos[d, :, j]
                    if all(int(z) + 1 in s for z in np.flatnonzero(opposing)):
                        s.add(i + 1)
                        changed = True
                        break
                if i + 1 in s:
                    break
    detail = {"seed": sorted(seed), "closure": sorted(s)}
    if len(s) == n:
        evidence = "sign-herdable" if len(seed) == n else "sign-herdable-balanced"
        return Verdict(Status.HERDABLE, evidence, detail=detail)
    detail["unresolved"] = sorted(set(range(1, n + 1)) - s)
    return Verdict(Status.UNKNOWN, "sign-tests-inconclusive", detail=detail)
