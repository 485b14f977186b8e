"""Herdability analysis for continuous-time linear systems.

A set of states is herdable when some input drives all of them above any
nonnegative threshold from any initial condition. The routines here decide
it from the range of the controllability matrix or grammian, give cheap
sufficient and necessary conditions from column signs and from the signed
system graph, and enumerate herdable sets exactly on out-branchings.
"""

__version__ = "0.1.0"

from .model import (LtiSystem, SignPattern, SignedGraph, Status, Verdict,  # noqa: E402
                    build_graph, load_system, parse_system, sign_of)
from .reachability import (ab_necessary_check, completely_herdable,  # noqa: E402
                           controllability_matrix, grammian, herdable_subset,
                           herdable_via_grammian)
from .columns import (balancing_fixpoint, classify_columns,  # noqa: E402
                      strictly_herdable_base, verdict_from_columns)
from .graphs import (input_connectable, positive_system_check,  # noqa: E402
                     sign_balanced_closure, sign_definite_c, sign_strictly_herdable,
                     signed_reach_sets, structural_balance)
from .outbranching import (completely_herdable_tree, detect_outbranching,  # noqa: E402
                           enumerate_maximal_herdable)
from .ensemble import (EnsembleConfig, herdability_robustness_oracle,  # noqa: E402
                       sample_realization, sign_definiteness_oracle)

__all__ = [
    "LtiSystem", "SignPattern", "SignedGraph", "Status", "Verdict",
    "build_graph", "load_system", "parse_system", "sign_of",
    "ab_necessary_check", "completely_herdable", "controllability_matrix", "grammian",
    "herdable_subset", "herdable_via_grammian",
    "balancing_fixpoint", "classify_columns", "strictly_herdable_base", "verdict_from_columns",
    "input_connectable", "positive_system_check", "sign_balanced_closure", "sign_definite_c",
    "sign_strictly_herdable", "signed_reach_sets", "structural_balance",
    "completely_herdable_tree", "detect_outbranching", "enumerate_maximal_herdable",
    "EnsembleConfig", "herdability_robustness_oracle", "sample_realization",
    "sign_definiteness_oracle",
]
