"""
Exact herdable sets on an out-branching
=======================================

On a single-input tree every state has one walk from the input, so each
depth contributes its positive layer, its negative layer or nothing.
"""

import numpy as np

from herdability import (SignPattern, completely_herdable_tree, controllability_matrix,
                         detect_outbranching, enumerate_maximal_herdable, herdable_subset)
from herdability.outbranching import max_herdable_size

sa = np.zeros((6, 6), dtype=int)
sa[2, 0], sa[3, 0], sa[4, 1], sa[5, 1] = -1, 1, -1, 1
p = SignPattern(sa, [[-1], [1], [0], [0], [0], [0]])

ob = detect_outbranching(p.unit_realization())
for d in range(1, ob.d_max + 1):
    print(f"depth {d}: P={sorted(ob.layer_p[d])} N={sorted(ob.layer_n[d])}")

print("largest herdable set size:", max_herdable_size(ob))
for sel in enumerate_maximal_herdable(ob):
    print(sel.choices, sorted(sel.nodes))
print(completely_herdable_tree(ob))

# The LP agrees on a realization
c = controllability_matrix(p.unit_realization())
print(herdable_subset(c, [1, 3, 6]).status.value, herdable_subset(c, [1, 2]).status.value)
