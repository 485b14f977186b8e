"""Two-phase simplex for the feasibility problem ``find alpha : M alpha >= 1``.

``alpha`` is free, so it is split as ``alpha = p - q`` with ``p, q >= 0``.
Phase one minimizes the sum of artificials on

    M p - M q - s + r = 1,   p, q, s, r >= 0

starting from the all-artificial basis. Phase two, when the first phase
reaches zero, minimizes ``sum(p + q)`` so the returned witness is an
L1-minimal one. Bland's rule is used for both entering and leaving
variables, which rules out cycling in exact arithmetic.

The same tableau code runs on ``float`` arrays and on ``object`` arrays of
:class:`fractions.Fraction`; with fractions every tolerance is zero.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = ["FeasibilityResult", "solve_feasibility"]

PIVOT_TOL = 1e-9
COST_TOL = 1e-10
# float phase-one optimum at or below this counts as (near) feasible
NEAR_ZERO = 1e-7


@dataclass
class FeasibilityResult:
    feasible: bool
    alpha: np.ndarray
    phase1_objective: float
    pivots: int
    exact: bool


class _Tableau:
    def __init__(self, m_rows, exact):
        self.exact = exact
        t, q = m_rows.shape
        self.t, self.q = t, q
        self.nvar = 2 * q + 2 * t
        zero = Fraction(0) if exact else 0.0
        one = Fraction(1) if exact else 1.0
        dtype = object if exact else float
        tab = np.full((t + 1, self.nvar + 1), zero, dtype=dtype)
        tab[:t, :q] = m_rows
        tab[:t, q:2 * q] = -m_rows
        for r in range(t):
            tab[r, 2 * q + r] = -one
            tab[r, 2 * q + t + r] = one
            tab[r, -1] = one
        self.tab = tab
        self.basis = [2 * q + t + r for r in range(t)]
        self.allowed = np.ones(self.nvar, dtype=bool)
        self.ptol = 0 if exact else PIVOT_TOL
        self.ctol = 0 if exact else COST_TOL
        self.pivots = 0

    @property
    def artificial(self):
        return range(2 * self.q + self.t, self.nvar)

    def set_cost(self, cost):
        t = self.t
        row = np.array(cost + [0], dtype=self.tab.dtype)
        for r, bv in enumerate(self.basis):
            if cost[bv] != 0:
                row = row - cost[bv] * self.tab[r]
        self.tab[t] = row

    def pivot(self, r, c):
        tab = self.tab
        tab[r] = tab[r] / tab[r, c]
        for k in range(tab.shape[0]):
            if k != r and tab[k, c] != 0:
                tab[k] = tab[k] - tab[k, c] * tab[r]
        self.basis[r] = c
        self.pivots += 1

    def run(self, max_pivots):
        tab = self.tab
        t = self.t
        while True:
            cost = tab[t, :-1]
            entering = next(
                (c for c in range(self.nvar) if self.allowed[c] and cost[c] < -self.ctol),
                None)
            if entering is None:
                return True
            best = None
            for r in range(t):
                a = tab[r, entering]
                if a > self.ptol:
                    ratio = tab[r, -1] / a
                    key = (ratio, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                # unbounded direction; cannot happen with nonnegative costs
                return True
            self.pivot(best[1], entering)
            if self.pivots > max_pivots:
                return False

    def value(self, var):
        if var in self.basis:
            return self.tab[self.basis.index(var), -1]
        return Fraction(0) if self.exact else 0.0

    def alpha(self):
        q = self.q
        vals = [self.value(k) - self.value(q + k) for k in range(q)]
        return np.array(vals, dtype=object if self.exact else float)


def solve_feasibility(m_rows, exact=False, minimize_l1=True, max_pivots=None):
    """Decide whether ``m_rows @ alpha >= 1`` has a solution.

    Parameters
    ----------
    m_rows : (t, q) array_like
        Constraint rows. With ``exact=True`` the entries are converted to
        :class:`~fractions.Fraction` exactly (floats keep their binary value).
    exact : bool
        Run the pivots in rational arithmetic.
    minimize_l1 : bool
        Run the second phase to return an L1-minimal ``alpha``.
    max_pivots : int, optional
        Float-mode safeguard. Exceeding it raises ``RuntimeError``.

    Returns
    -------
    FeasibilityResult
    """
    m_rows = np.atleast_2d(np.asarray(m_rows, dtype=float if not exact else object))
    t, q = m_rows.shape
    if exact:
        m_rows = np.vectorize(Fraction, otypes=[object])(m_rows) if m_rows.size else m_rows
    if max_pivots is None:
        max_pivots = 50 * (t + 2 * q + 2 * t) + 100
    zero = Fraction(0) if exact else 0.0
    if t == 0:
        return FeasibilityResult(True, np.full(q, zero, dtype=object if exact else float),
                                 0.0, 0, exact)
    if q == 0:
        return FeasibilityResult(False, np.zeros(0), float(t), 0, exact)

    tab = _Tableau(m_rows, exact)
    art = list(tab.artificial)
    cost = [0] * tab.nvar
    for c in art:
        cost[c] = 1
    tab.set_cost(cost)
    if not tab.run(max_pivots):
        raise RuntimeError("simplex pivot limit exceeded")
    phase1 = -tab.tab[t, -1]
    phase1_f = float(phase1) + 0.0
    feasible = phase1 == 0 if exact else phase1_f <= NEAR_ZERO
    if not feasible:
        return FeasibilityResult(False, tab.alpha(), phase1_f, tab.pivots, exact)

    # drive zero-valued artificials out of the basis
    for r in range(t):
        if tab.basis[r] in art:
            row = tab.tab[r, :2 * tab.q + t]
            col = next((c for c in range(len(row)) if abs(row[c]) > tab.ptol), None)
            if col is not None:
                tab.pivot(r, col)
    tab.allowed[art] = False
    if minimize_l1:
        cost = [1] * (2 * tab.q) + [0] * (2 * t)
        tab.set_cost(cost)
        if not tab.run(max_pivots):
            raise RuntimeError("simplex pivot limit exceeded")
    return FeasibilityResult(True, tab.alpha(), phase1_f, tab.pivots, exact)
