"""
Reading herdability off the columns of C
========================================

A unisigned column herds every state it touches. States opposed only by
already herdable states join them. Both rules are sufficient only.
"""

import numpy as np

from herdability import (balancing_fixpoint, classify_columns, completely_herdable,
                         controllability_matrix, strictly_herdable_base, verdict_from_columns)
from herdability.model import LtiSystem

c = np.array([[1.0, 0], [-1, 1]])
print([k.value for k in classify_columns(c)])
base = strictly_herdable_base(c)
print("unisigned columns herd", sorted(base.s))
closed = balancing_fixpoint(c, base)
print("after balancing", sorted(closed.s), "in", closed.passes, "passes")
print(verdict_from_columns(c))

# The three-cycle: all columns balanced, so the column rules say nothing
sys_ = LtiSystem([[0, 1, 0], [0, 0, 1], [1, 0, 0]], [[1], [1], [-1]])
cyc = controllability_matrix(sys_)
print([k.value for k in classify_columns(cyc)])
print("columns:", verdict_from_columns(cyc).status.value,
      "| LP:", completely_herdable(sys_).status.value)
