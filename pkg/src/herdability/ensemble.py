"""Weighted realizations of a sign pattern and Monte Carlo oracles over them.

Every trial draws its magnitudes from its own Philox stream keyed by
``(seed, trial)``; entry ``k`` of the flattened ``[A, B]`` (row-major ``A``
then row-major ``B``) always takes the ``k``-th draw. Trials are therefore
reproducible individually and independent of evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import LtiSystem, SignPattern
from .reachability import completely_herdable, controllability_matrix

__all__ = [
    "EnsembleConfig",
    "sample_realization",
    "ConstantSign",
    "CounterexamplePair",
    "sign_definiteness_oracle",
    "RobustnessResult",
    "herdability_robustness_oracle",
    "robust_signs",
]


@dataclass(frozen=True)
class EnsembleConfig:
    seed: int = 0
    trials: int = 1000
    magnitude_range: tuple = (0.1, 10.0)

    def __post_init__(self):
        low, high = self.magnitude_range
        if not 0 < low < high:
            raise ValueError(f"need 0 < low < high, got {self.magnitude_range}")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")


def _stream(seed, trial):
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, trial])))


def sample_realization(p: SignPattern, cfg: EnsembleConfig, trial: int) -> LtiSystem:
    """Realization of ``p`` with log-uniform magnitudes in ``cfg.magnitude_range``."""
    n, m = p.n, p.m
    low, high = cfg.magnitude_range
    u = _stream(cfg.seed, trial).random(n * n + n * m)
    mags = np.exp(np.log(low) + u * (np.log(high) - np.log(low)))
    a = p.sa * mags[:n * n].reshape(n, n)
    b = p.sb * mags[n * n:].reshape(n, m)
    return LtiSystem(a, b)


def robust_signs(sys: LtiSystem, tol=1e-12) -> np.ndarray:
    """Signs of ``C`` with entries small against their own walk mass set to 0.

    The walk mass of an entry is the same entry of the controllability
    matrix of ``(|A|, |B|)``: the sum of absolute walk weight products.
    Only genuine cancellation can push an entry below ``tol`` times it.
    """
    c = controllability_matrix(sys)
    mass = controllability_matrix(LtiSystem(np.abs(sys.a), np.abs(sys.b)))
    signs = np.sign(c).astype(np.int8)
    signs[np.abs(c) <= tol * mass] = 0
    return signs


@dataclass(frozen=True)
class ConstantSign:
    """Every trial produced ``signs``. Evidence only, not a proof."""

    signs: np.ndarray
    trials: int


@dataclass(frozen=True)
class CounterexamplePair:
    """Two realizations whose ``C`` differ in sign at ``entry`` (1-based row, column)."""

    trial_a: int
    trial_b: int
    system_a: LtiSystem
    system_b: LtiSystem
    entry: tuple


def sign_definiteness_oracle(p: SignPattern, cfg: EnsembleConfig, tol=1e-12):
    """Sample ``cfg.trials`` realizations and compare the sign patterns of ``C``."""
    first = sample_realization(p, cfg, 0)
    ref = robust_signs(first, tol)
    for t in range(1, cfg.trials):
        sys = sample_realization(p, cfg, t)
        signs = robust_signs(sys, tol)
        diff = np.argwhere(signs != ref)
        if diff.size:
            i, k = diff[0]
            return CounterexamplePair(0, t, first, sys, (int(i) + 1, int(k) + 1))
    return ConstantSign(ref, cfg.trials)


@dataclass(frozen=True)
class RobustnessResult:
    """Aggregate of ``completely_herdable`` over the ensemble.

    ``kind`` is ``"AllHerdable"``, ``"AllNotHerdable"`` or ``"Mixed"``.
    """

    kind: str
    herdable: int
    not_herdable: int
    first_herdable: int | None = None
    first_not_herdable: int | None = None


def herdability_robustness_oracle(p: SignPattern, cfg: EnsembleConfig) -> RobustnessResult:
    yes = no = 0
    first_yes = first_no = None
    for t in range(cfg.trials):
        if completely_herdable(sample_realization(p, cfg, t)).herdable:
            yes += 1
            first_yes = t if first_yes is None else first_yes
        else:
            no += 1
            first_no = t if first_no is None else first_no
    if no == 0:
        kind = "AllHerdable"
    elif yes == 0:
        kind = "AllNotHerdable"
    else:
        kind = "Mixed"
    return RobustnessResult(kind, yes, no, first_yes, first_no)
