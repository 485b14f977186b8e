"""
Sampling realizations of a sign pattern
=======================================

Log-uniform magnitudes in [0.1, 10] stress walks of very different
weights. Constant signs across trials are evidence; one flip is proof.
"""

import numpy as np

from herdability import (EnsembleConfig, SignPattern, herdability_robustness_oracle,
                         sample_realization, sign_definiteness_oracle)

cfg = EnsembleConfig(seed=0, trials=1000)

two = SignPattern([[0, 0], [1, 0]], [[1], [-1]])
print(sample_realization(two, cfg, 0))
res = sign_definiteness_oracle(two, cfg)
print(type(res).__name__, "\n", res.signs)

# Two walks of length two into x3 with opposite signs
diamond = SignPattern([[0, 0, 0], [0, 0, 0], [1, -1, 0]], [[1], [1], [0]])
res = sign_definiteness_oracle(diamond, cfg)
print(type(res).__name__, "trials", res.trial_a, res.trial_b, "entry", res.entry)

cycle = SignPattern(np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]]), [[1], [1], [-1]])
print(herdability_robustness_oracle(cycle, cfg))
