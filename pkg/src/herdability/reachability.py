"""Controllability objects and range-feasibility herdability tests.

A set of states ``T`` is herdable exactly when the range of the
controllability matrix ``C`` contains a vector positive on ``T``. Since
positive scaling of such a vector keeps it in the range, the threshold can
be fixed at one: ``T`` is herdable iff ``(C @ alpha)[i] >= 1`` for all
``i in T`` has a solution. The grammian ``W_c`` and, as a necessary
condition for complete herdability, ``[A B]`` are tested the same way.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.linalg import expm, solve_continuous_lyapunov

from .exceptions import DimensionMismatch, NonConvergence, NotStable
from .model import LtiSystem, Status, Verdict
from .simplex import solve_feasibility

__all__ = [
    "controllability_matrix",
    "grammian",
    "numerical_rank",
    "herdable_subset",
    "completely_herdable",
    "herdable_via_grammian",
    "ab_necessary_check",
    "witness_holds",
]

HURWITZ_MARGIN = 1e-9
QUAD_TOL = 1e-8
QUAD_MAX_DEPTH = 20
RANK_RTOL = 1e-8
# grammian diagonal entries below this fraction of the largest are unreachable
GRAMMIAN_FLOOR = 1e-12


def controllability_matrix(sys: LtiSystem) -> np.ndarray:
    """``C = [B, AB, ..., A^(n-1) B]``.

    Column ``m*(d-1) + j`` (1-based ``d``, ``j``) is column ``j`` of
    ``A^(d-1) B``. Blocks are built by repeated multiplication with ``A``.
    """
    n, m = sys.n, sys.m
    c = np.empty((n, n * m))
    block = np.array(sys.b)
    for d in range(n):
        c[:, d * m:(d + 1) * m] = block
        block = sys.a @ block
    return c


def _simpson(a, bbt_root, horizon, intervals):
    h = horizon / intervals
    step = expm(a * h)
    g = np.array(bbt_root)
    total = np.zeros((a.shape[0], a.shape[0]))
    for k in range(intervals + 1):
        f = g @ g.T
        if k == 0 or k == intervals:
            total += f
        elif k % 2:
            total += 4.0 * f
        else:
            total += 2.0 * f
        g = step @ g
    return total * (h / 3.0)


def grammian(sys: LtiSystem, horizon=math.inf) -> np.ndarray:
    """Controllability grammian on ``[0, horizon]``.

    Parameters
    ----------
    sys : LtiSystem
    horizon : float or ``math.inf``
        A finite horizon integrates ``e^{A t} B B^T e^{A^T t}`` by composite
        Simpson, doubling the number of intervals until the max-norm change
        drops below ``1e-8 * max(1, |W|_max)``. ``inf`` solves
        ``A W + W A^T + B B^T = 0`` and needs ``A`` Hurwitz.

    Returns
    -------
    w : (n, n) ndarray
        Symmetric positive semidefinite.

    Raises
    ------
    NotStable
        Infinite horizon with an eigenvalue of real part >= -1e-9.
    NonConvergence
        Quadrature still moving after 20 halvings.
    """
    a = sys.a
    if horizon == math.inf or horizon == "inf":
        eig = np.linalg.eigvals(a)
        if np.max(eig.real) >= -HURWITZ_MARGIN:
            raise NotStable(
                f"A is not Hurwitz (max real part {np.max(eig.real):.3g})")
        w = solve_continuous_lyapunov(a, -sys.b @ sys.b.T)
        return (w + w.T) / 2.0
    horizon = float(horizon)
    if not horizon > 0:
        raise ValueError(f"horizon must be positive, got {horizon}")
    intervals = 2
    prev = _simpson(a, sys.b, horizon, intervals)
    for _ in range(QUAD_MAX_DEPTH):
        intervals *= 2
        cur = _simpson(a, sys.b, horizon, intervals)
        change = np.max(np.abs(cur - prev))
        if change < QUAD_TOL * max(1.0, np.max(np.abs(cur))):
            return (cur + cur.T) / 2.0
        prev = cur
    raise NonConvergence(
        f"grammian quadrature did not converge after {QUAD_MAX_DEPTH} halvings")


def numerical_rank(mat, rtol=RANK_RTOL) -> int:
    """Number of singular values above ``rtol * sigma_max``."""
    s = np.linalg.svd(np.atleast_2d(mat), compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.sum(s > rtol * s[0]))


def _targets(targets, n):
    idx = sorted({int(i) for i in targets})
    if not idx:
        raise DimensionMismatch("target set must be nonempty")
    if idx[0] < 1 or idx[-1] > n:
        raise DimensionMismatch(f"targets {idx} out of range 1..{n}")
    return tuple(idx)


def witness_holds(mat, alpha, targets, tol=1e-9) -> bool:
    """Check ``(mat @ alpha)[i] >= 1 - tol`` on the 1-based ``targets``."""
    if alpha is None:
        return False
    values = np.asarray(mat, dtype=float) @ np.asarray(alpha, dtype=float)
    rows = [i - 1 for i in targets]
    return bool(np.all(values[rows] >= 1.0 - tol))


def _rescaled(mat, alpha, rows):
    # positive rescaling keeps the witness valid for the strict inequality
    lowest = np.min(mat[rows] @ alpha)
    if lowest > 0:
        return alpha / min(lowest, 1.0)
    return alpha


def herdable_subset(mat, targets, tol=1e-9) -> Verdict:
    """Decide whether the range of ``mat`` has a vector positive on ``targets``.

    Parameters
    ----------
    mat : (n, q) array_like
        Matrix whose range is tested (``C``, ``W_c`` or ``[A B]``).
    targets : iterable of int
        1-based state indices.
    tol : float
        Entries with ``|M_ij| <= tol * max_i |M_ij|`` are treated as zero, and
        the witness must satisfy ``(M @ alpha)[i] >= 1 - tol``.

    Returns
    -------
    Verdict
        ``Herdable`` with witness ``alpha`` or ``NotHerdable``. Evidence is
        ``lp-feasible``/``lp-infeasible``, suffixed ``-exact`` when the
        rational-arithmetic solve made the call.
    """
    mat = np.atleast_2d(np.asarray(mat, dtype=float))
    if mat.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got shape {mat.shape}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    tgt = _targets(targets, mat.shape[0])
    rows = [i - 1 for i in tgt]

    colmax = np.max(np.abs(mat), axis=0) if mat.size else np.zeros(mat.shape[1])
    cleaned = np.where(np.abs(mat) <= tol * colmax, 0.0, mat)
    live = colmax > 0
    scale = np.where(live, colmax, 1.0)
    scaled = cleaned / scale

    res = solve_feasibility(scaled[rows])
    detail = {"phase1_objective": res.phase1_objective, "pivots": res.pivots}
    if not res.feasible:
        return Verdict(Status.NOT_HERDABLE, "lp-infeasible", targets=tgt, detail=detail)

    alpha = np.where(live, res.alpha / scale, 0.0)
    if not witness_holds(mat, alpha, tgt, tol):
        alpha = _rescaled(mat, alpha, rows)
    if witness_holds(mat, alpha, tgt, tol):
        return Verdict(Status.HERDABLE, "lp-feasible", alpha, tgt, detail)

    # near-degenerate optimum: settle it in rational arithmetic
    ex = solve_feasibility(cleaned[rows], exact=True)
    detail = {"phase1_objective": ex.phase1_objective, "pivots": ex.pivots,
              "float_phase1_objective": res.phase1_objective}
    if not ex.feasible:
        return Verdict(Status.NOT_HERDABLE, "lp-infeasible-exact", targets=tgt,
                       detail=detail)
    alpha = _rescaled(mat, ex.alpha.astype(float), rows)
    return Verdict(Status.HERDABLE, "lp-feasible-exact", alpha, tgt, detail)


def completely_herdable(sys: LtiSystem, tol=1e-9) -> Verdict:
    """Herdability of all states via the controllability matrix."""
    return herdable_subset(controllability_matrix(sys), range(1, sys.n + 1), tol)


def _clean_grammian(w):
    # W is PSD, so a vanishing diagonal entry forces its row and column to zero
    d = np.diag(w)
    top = np.max(d) if d.size else 0.0
    dead = d <= GRAMMIAN_FLOOR * top
    w = np.array(w)
    w[dead, :] = 0.0
    w[:, dead] = 0.0
    return w


def herdable_via_grammian(sys: LtiSystem, horizon=math.inf, targets=None,
                          tol=1e-9) -> Verdict:
    """Herdability of ``targets`` (default: all states) from ``range(W_c)``."""
    if targets is None:
        targets = range(1, sys.n + 1)
    w = _clean_grammian(grammian(sys, horizon))
    v = herdable_subset(w, targets, tol)
    return Verdict(v.status, "grammian-" + v.evidence, v.witness, v.targets,
                   dict(v.detail, horizon=str(horizon)))


def ab_necessary_check(sys: LtiSystem, tol=1e-9) -> Verdict:
    """Necessary condition: a positive vector in ``range([A B])``.

    A pass is not a proof of herdability, so it is reported as ``Unknown``
    with evidence ``abn-passed``. Failure proves the system is not
    completely herdable.
    """
    ab = np.hstack([sys.a, sys.b])
    v = herdable_subset(ab, range(1, sys.n + 1), tol)
    if v.herdable:
        return Verdict(Status.UNKNOWN, "abn-passed", v.witness, v.targets, v.detail)
    return Verdict(Status.NOT_HERDABLE, "abn-infeasible", None, v.targets, v.detail)
