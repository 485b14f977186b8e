"""Exact herdable sets for single-input, input-rooted out-branchings.

Each state of such a tree sits on a unique walk from the input, so column
``d`` of ``C`` is supported exactly on the states at depth ``d`` and its
signs are the sign products along their walks. Per depth one can therefore
herd either the positive layer, the negative layer or nothing, and the
herdable sets are the unions of one choice per depth.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .exceptions import NotOutBranching, NotSingleInput, TooManySelections
from .model import LtiSystem, Status, Verdict, build_graph, node_index

__all__ = [
    "OutBranching",
    "HerdableSelection",
    "detect_outbranching",
    "max_herdable_size",
    "enumerate_maximal_herdable",
    "completely_herdable_tree",
]

SELECTION_CAP = 2 ** 16


@dataclass(frozen=True)
class OutBranching:
    """Depth and signed layers of an input-rooted tree (1-based states)."""

    root: str
    depth: dict
    d_max: int
    layer_p: dict
    layer_n: dict


@dataclass(frozen=True)
class HerdableSelection:
    """One choice (``"P"``, ``"N"`` or ``"Empty"``) per depth and the set it herds."""

    choices: tuple
    nodes: frozenset

    @property
    def size(self) -> int:
        return len(self.nodes)


def detect_outbranching(g) -> OutBranching:
    """Recognize an input-rooted out-branching and compute its signed layers.

    Raises
    ------
    NotSingleInput
        The graph has more than one input.
    NotOutBranching
        Some state has in-degree other than one (self-loops count) or is
        unreachable from the input.
    """
    if isinstance(g, LtiSystem):
        g = build_graph(g)
    if g.m != 1:
        raise NotSingleInput(f"out-branching analysis needs one input, got {g.m}")
    parent = {}
    for e in g.edges:
        if e.target in parent:
            raise NotOutBranching(f"state {e.target} has in-degree above one",
                                  node=node_index(e.target) + 1)
        parent[e.target] = e
    for x in g.state_nodes:
        if x not in parent:
            raise NotOutBranching(f"state {x} has no incoming edge",
                                  node=node_index(x) + 1)

    children = {}
    for e in g.edges:
        children.setdefault(e.source, []).append(e)
    root = g.input_nodes[0]
    depth, sign = {}, {}
    queue = deque([(root, 0, 1)])
    while queue:
        v, dv, sv = queue.popleft()
        for e in children.get(v, ()):
            i = node_index(e.target) + 1
            depth[i] = dv + 1
            sign[i] = sv * e.sign
            queue.append((e.target, dv + 1, sv * e.sign))
    missing = sorted(set(range(1, g.n + 1)) - set(depth))
    if missing:
        raise NotOutBranching(f"state x{missing[0]} is not reachable from {root}",
                              node=missing[0])
    d_max = max(depth.values()) if depth else 0
    layer_p = {d: frozenset() for d in range(1, d_max + 1)}
    layer_n = dict(layer_p)
    for i, d in depth.items():
        if sign[i] > 0:
            layer_p[d] = layer_p[d] | {i}
        else:
            layer_n[d] = layer_n[d] | {i}
    return OutBranching(root, depth, d_max, layer_p, layer_n)


def max_herdable_size(ob: OutBranching) -> int:
    """Largest herdable set size: sum over depths of the bigger layer."""
    return sum(max(len(ob.layer_p[d]), len(ob.layer_n[d]))
               for d in range(1, ob.d_max + 1))


def _options(ob, d):
    p, n = ob.layer_p[d], ob.layer_n[d]
    if not p and not n:
        return [("Empty", frozenset())]
    if len(p) > len(n):
        return [("P", p)]
    if len(n) > len(p):
        return [("N", n)]
    return [("P", p), ("N", n)]


def enumerate_maximal_herdable(ob: OutBranching, cap=SELECTION_CAP) -> list:
    """All herdable sets of maximal size, one per tie-breaking choice.

    Raises
    ------
    TooManySelections
        More than ``cap`` selections; the error carries the maximal size.
    """
    per_depth = [_options(ob, d) for d in range(1, ob.d_max + 1)]
    count = 1
    for opts in per_depth:
        count *= len(opts)
    if count > cap:
        raise TooManySelections(
            f"{count} maximal selections exceed the cap of {cap}",
            count=count, size=max_herdable_size(ob))
    out = []
    for combo in itertools.product(*per_depth):
        nodes = frozenset().union(*(s for _, s in combo))
        out.append(HerdableSelection(tuple(c for c, _ in combo), nodes))
    return out


def completely_herdable_tree(ob: OutBranching) -> Verdict:
    """Exact: herdable iff every depth has exactly one nonempty signed layer."""
    mixed = [d for d in range(1, ob.d_max + 1) if ob.layer_p[d] and ob.layer_n[d]]
    if mixed:
        return Verdict(Status.NOT_HERDABLE, "outbranching-mixed-layer",
                       detail={"mixed_depths": mixed, "max_size": max_herdable_size(ob)})
    return Verdict(Status.HERDABLE, "outbranching-unisigned-layers",
                   detail={"max_size": max_herdable_size(ob)})
