"""
Sign patterns and signed graphs
===============================

Walk signs from the inputs fix the signs of C for every realization of a
pattern whenever no state is reached by walks of both signs at one length.
"""

import numpy as np

from herdability import (SignPattern, build_graph, sign_balanced_closure, sign_definite_c,
                         sign_strictly_herdable, signed_reach_sets, structural_balance)
from herdability.graphs import input_connectable, positive_system_check
from herdability.model import LtiSystem

sys_ = LtiSystem([[-1, 0, 0], [5, 0, 2], [4, -3, 0]], [[0, -2], [2, 0], [0, 3]])
g = build_graph(sys_)
for e in g.edges:
    print(f"{e.source} -> {e.target}  {e.weight:+g}")

print("input connectable:", input_connectable(g))
print("positive system:", positive_system_check(sys_).evidence)

cert = structural_balance(g)
print("balanced:", cert.balanced, "semi-cycle:", cert.violating_semicycle)

p = SignPattern(np.sign(sys_.a), np.sign(sys_.b))
rs = signed_reach_sets(p)
for d in range(1, 4):
    print(f"d={d}  P={sorted(rs.p(d, 1))}  N={sorted(rs.n(d, 1))}")
definite, offending = sign_definite_c(p)
print("sign definite:", definite, "ambiguous (i, d, j):", offending[:4], "...")

# Unbalanced, yet every walk of a given length to x2 has one sign
two = SignPattern([[0, 0], [1, 0]], [[1], [-1]])
print("balanced:", structural_balance(two.unit_realization()).balanced,
      "| sign definite:", sign_definite_c(two)[0])
print("sign strictly herdable:", sorted(sign_strictly_herdable(two)))
print(sign_balanced_closure(two), sign_balanced_closure(two).detail)
