import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from herdability.ensemble import (ConstantSign, CounterexamplePair, EnsembleConfig,
                                  herdability_robustness_oracle, robust_signs,
                                  sample_realization, sign_definiteness_oracle)
from herdability.graphs import sign_balanced_closure, sign_definite_c
from herdability.model import LtiSystem, SignPattern, sign_of
from herdability.reachability import controllability_matrix
from oracles import random_pattern
from systems import DIAMOND, EXAMPLE, EXNOND, FURTHER

seeds = st.integers(0, 2**32 - 1)


def test_config_validation():
    with pytest.raises(ValueError):
        EnsembleConfig(magnitude_range=(1.0, 1.0))
    with pytest.raises(ValueError):
        EnsembleConfig(magnitude_range=(0.0, 1.0))
    with pytest.raises(ValueError):
        EnsembleConfig(trials=0)


def test_zero_pattern_realization():
    p = SignPattern(np.zeros((2, 2)), np.zeros((2, 1)))
    s = sample_realization(p, EnsembleConfig(), 0)
    assert not s.a.any() and not s.b.any()


def test_bitwise_reproducible():
    p = sign_of(EXAMPLE)
    cfg = EnsembleConfig(seed=42)
    first = sample_realization(p, cfg, 0)
    again = sample_realization(p, EnsembleConfig(seed=42), 0)
    assert first.a.tobytes() == again.a.tobytes()
    assert first.b.tobytes() == again.b.tobytes()
    assert sign_of(first) == p
    assert sample_realization(p, cfg, 1) != first


def test_trials_independent_of_order():
    p = sign_of(EXAMPLE)
    cfg = EnsembleConfig(seed=5)
    forward = [sample_realization(p, cfg, t) for t in range(5)]
    backward = [sample_realization(p, cfg, t) for t in reversed(range(5))][::-1]
    assert forward == backward


def test_entry_k_takes_draw_k():
    # the same flattened entry gets the same magnitude whatever else is present
    dense = SignPattern(np.ones((2, 2)), np.ones((2, 1)))
    sparse = SignPattern([[1, 0], [0, 0]], [[0], [0]])
    cfg = EnsembleConfig(seed=9)
    assert sample_realization(dense, cfg, 3).a[0, 0] == sample_realization(sparse, cfg, 3).a[0, 0]


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_sign_round_trip_and_range(seed):
    rng = np.random.default_rng(seed)
    p = random_pattern(rng, int(rng.integers(1, 7)), int(rng.integers(1, 3)))
    cfg = EnsembleConfig(seed=seed)
    for t in range(20):
        s = sample_realization(p, cfg, t)
        assert sign_of(s) == p
        mags = np.abs(np.concatenate([s.a.ravel(), s.b.ravel()]))
        mags = mags[mags > 0]
        assert np.all((mags >= 0.1) & (mags <= 10.0))


def test_sign_round_trip_thousand_trials():
    p = sign_of(EXAMPLE)
    cfg = EnsembleConfig(seed=1)
    assert all(sign_of(sample_realization(p, cfg, t)) == p for t in range(1000))


def test_log_uniform_distribution():
    p = SignPattern(np.ones((4, 4)), np.ones((4, 1)))
    cfg = EnsembleConfig(seed=3)
    logs = np.concatenate([np.log10(np.abs(sample_realization(p, cfg, t).a.ravel()))
                           for t in range(500)])
    # log10 of the magnitude is uniform on [-1, 1]
    assert abs(np.mean(logs)) < 0.05
    assert abs(np.var(logs) - 1 / 3) < 0.03


def test_robust_signs_detect_cancellation():
    # u -> x1 -> x3 and u -> x2 -> x3 with equal and opposite walk weights
    s = LtiSystem([[0, 0, 0], [0, 0, 0], [1.0, -1.0, 0]], [[1.0], [1.0], [0]])
    signs = robust_signs(s)
    assert signs[2, 1] == 0
    assert controllability_matrix(s)[2, 1] == 0


def test_further_constant_sign():
    res = sign_definiteness_oracle(FURTHER, EnsembleConfig(seed=0, trials=1000))
    assert isinstance(res, ConstantSign) and res.trials == 1000
    np.testing.assert_array_equal(res.signs, [[1, 0], [-1, 1]])


def test_diamond_counterexample():
    res = sign_definiteness_oracle(DIAMOND, EnsembleConfig(seed=0, trials=200))
    assert isinstance(res, CounterexamplePair)
    i, k = res.entry
    sa = np.sign(controllability_matrix(res.system_a)[i - 1, k - 1])
    sb = np.sign(controllability_matrix(res.system_b)[i - 1, k - 1])
    assert sa != sb
    assert (i, k) == (3, 2)
    assert sign_of(res.system_a) == DIAMOND == sign_of(res.system_b)


def test_single_edge_constant():
    p = SignPattern([[0]], [[-1]])
    assert isinstance(sign_definiteness_oracle(p, EnsembleConfig(trials=50)), ConstantSign)


def test_robustness_examples():
    chain = SignPattern([[0, 0], [-1, 0]], [[1], [0]])
    assert sign_balanced_closure(chain).herdable
    res = herdability_robustness_oracle(chain, EnsembleConfig(trials=200))
    assert res.kind == "AllHerdable" and res.herdable == 200

    no_input = SignPattern(np.ones((2, 2)), np.zeros((2, 1)))
    res = herdability_robustness_oracle(no_input, EnsembleConfig(trials=50))
    assert res.kind == "AllNotHerdable" and res.first_not_herdable == 0


def test_exnond_recorded_outcome():
    res = herdability_robustness_oracle(EXNOND, EnsembleConfig(seed=0, trials=1000))
    assert res.kind == "AllHerdable"
    assert (res.herdable, res.not_herdable) == (1000, 0)


def test_robustness_deterministic():
    cfg = EnsembleConfig(seed=11, trials=100)
    assert herdability_robustness_oracle(DIAMOND, cfg) == herdability_robustness_oracle(
        DIAMOND, cfg)
    assert sign_definiteness_oracle(DIAMOND, cfg).entry == sign_definiteness_oracle(
        DIAMOND, cfg).entry


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_sign_definite_patterns_give_constant_sign(seed):
    rng = np.random.default_rng(seed)
    p = random_pattern(rng, int(rng.integers(1, 7)), int(rng.integers(1, 3)),
                       density=float(rng.uniform(0.1, 0.5)))
    if sign_definite_c(p)[0]:
        res = sign_definiteness_oracle(p, EnsembleConfig(seed=seed, trials=50))
        assert isinstance(res, ConstantSign)
