"""Acceptance criteria, each reported as a single PASS/FAIL line."""

import io
import json
import time

import numpy as np

from conftest import ACCEPTANCE_LINES
from herdability.cli import run
from herdability.columns import verdict_from_columns
from herdability.ensemble import (ConstantSign, EnsembleConfig, sample_realization,
                                  sign_definiteness_oracle)
from herdability.graphs import (sign_balanced_closure, sign_definite_c,
                                sign_strictly_herdable, signed_reach_sets,
                                structural_balance)
from herdability.model import Status, build_graph
from herdability.outbranching import detect_outbranching, max_herdable_size
from herdability.reachability import (ab_necessary_check, completely_herdable,
                                      controllability_matrix, grammian,
                                      herdable_via_grammian, numerical_rank, witness_holds)
from oracles import (random_balanced_pattern, random_pattern, random_positive_system,
                     random_system, sparse_normal_system, walk_sets)
from systems import CHOOSE, CHOOSE_SETS, EXNOND, FURTHER, write_system


def record(number, title, ok, detail):
    ACCEPTANCE_LINES.append(
        (number, f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {detail}"))
    assert ok, detail


def test_1_outbranching_reproduction(tmp_path):
    path = write_system(tmp_path / "choose.json", CHOOSE.sa, CHOOSE.sb, mode="pattern")
    out = io.StringIO()
    start = time.perf_counter()
    code = run(["tree", path, "--format", "json"], stdout=out, stderr=io.StringIO())
    elapsed = time.perf_counter() - start
    tree = next(a for a in json.loads(out.getvalue())["analyses"] if a["name"] == "tree")
    sets = {frozenset(s) for s in tree["data"]["maximal_sets"]}
    ob = detect_outbranching(CHOOSE.unit_realization())
    size_formula = sum(max(len(ob.layer_p[d]), len(ob.layer_n[d]))
                       for d in range(1, ob.d_max + 1))
    ok = (code == 1 and sets == CHOOSE_SETS and tree["data"]["max_size"] == 3
          and size_formula == 3 == max_herdable_size(ob) and elapsed < 1.0)
    record(1, "out-branching reproduction", ok,
           f"sets={sorted(sorted(s) for s in sets)} size={tree['data']['max_size']} "
           f"runtime={elapsed:.3f}s")


def test_2_counterexample_reproduction():
    s = EXNOND.unit_realization()
    c = controllability_matrix(s)
    cols = verdict_from_columns(c)
    strict = sign_strictly_herdable(EXNOND)
    full = completely_herdable(s)
    ok = (cols.status is Status.UNKNOWN and strict == frozenset()
          and full.status is Status.HERDABLE
          and witness_holds(c, full.witness, [1, 2, 3], tol=1e-9))
    record(2, "counterexample reproduction", ok,
           f"columns={cols.status.value} sign_strict={sorted(strict)} "
           f"complete={full.status.value} witness={np.round(full.witness, 12).tolist()}")


def test_3_structural_balance_split():
    start = time.perf_counter()
    balanced = structural_balance(build_graph(FURTHER.unit_realization())).balanced
    definite = sign_definite_c(FURTHER)[0]
    oracle = sign_definiteness_oracle(FURTHER, EnsembleConfig(seed=0, trials=1000))
    elapsed = time.perf_counter() - start
    ok = (not balanced and definite and isinstance(oracle, ConstantSign)
          and elapsed < 5.0)
    record(3, "structural-balance split", ok,
           f"balanced={balanced} sign_definite={definite} "
           f"oracle={type(oracle).__name__} runtime={elapsed:.3f}s")


def test_4_positive_systems():
    rng = np.random.default_rng(4)
    violations = 0
    for _ in range(200):
        s = random_positive_system(rng, int(rng.integers(1, 9)), int(rng.integers(1, 4)))
        violations += not completely_herdable(s).herdable
    for _ in range(50):
        n = int(rng.integers(1, 9))
        s = random_positive_system(rng, n, int(rng.integers(1, 4)),
                                   disconnected=int(rng.integers(1, n + 1)))
        violations += completely_herdable(s).status is not Status.NOT_HERDABLE
    record(4, "positive-system property", violations == 0,
           f"{violations} violations over 200 connectable + 50 disconnected systems")


def test_5_range_equality():
    rng = np.random.default_rng(5)
    verdict_bad = rank_bad = 0
    for _ in range(100):
        s = sparse_normal_system(rng)
        verdict_bad += (completely_herdable(s).status
                        is not herdable_via_grammian(s, 1.0).status)
        rank_bad += (numerical_rank(controllability_matrix(s))
                     != numerical_rank(grammian(s, 1.0)))
    record(5, "range-equality property", verdict_bad == 0 and rank_bad == 0,
           f"{verdict_bad} verdict and {rank_bad} rank disagreements over 100 systems")


def test_6_abn_necessity():
    rng = np.random.default_rng(6)
    violations = 0
    for _ in range(500):
        s = random_system(rng)
        if completely_herdable(s).herdable:
            violations += ab_necessary_check(s).status is Status.NOT_HERDABLE
    record(6, "necessity property", violations == 0,
           f"{violations} violations over 500 systems")


def test_7_reach_set_oracle():
    rng = np.random.default_rng(7)
    mismatches = 0
    for _ in range(100):
        n, m = int(rng.integers(1, 7)), int(rng.integers(1, 3))
        p = random_pattern(rng, n, m, density=float(rng.uniform(0.15, 0.6)))
        rs = signed_reach_sets(p)
        for d in range(1, n + 1):
            for j in range(1, m + 1):
                mismatches += (rs.p(d, j), rs.n(d, j)) != walk_sets(p, d, j)
    record(7, "reach-set oracle equivalence", mismatches == 0,
           f"{mismatches} mismatching (d, j) cells over 100 patterns")


def test_8_sign_verdict_soundness():
    rng = np.random.default_rng(8)
    found = drawn = violations = 0
    while found < 100 and drawn < 20000:
        drawn += 1
        n, m = int(rng.integers(1, 7)), int(rng.integers(1, 3))
        p = random_pattern(rng, n, m, density=float(rng.uniform(0.15, 0.6)),
                           pos_bias=float(rng.uniform(0.3, 0.9)))
        if not sign_balanced_closure(p).herdable:
            continue
        found += 1
        cfg = EnsembleConfig(seed=found, trials=50)
        violations += sum(not completely_herdable(sample_realization(p, cfg, t)).herdable
                          for t in range(cfg.trials))
    record(8, "sign-verdict soundness", violations == 0 and found == 100,
           f"{violations} violations over {found} patterns x 50 realizations")


def test_9_structural_balance_sufficiency():
    rng = np.random.default_rng(9)
    violations = 0
    for k in range(100):
        p = random_balanced_pattern(rng, int(rng.integers(1, 7)), int(rng.integers(1, 3)))
        assert structural_balance(build_graph(p.unit_realization())).balanced
        oracle = sign_definiteness_oracle(p, EnsembleConfig(seed=k, trials=100))
        violations += not (sign_definite_c(p)[0] and isinstance(oracle, ConstantSign))
    record(9, "structural balance sufficiency", violations == 0,
           f"{violations} violations over 100 balanced patterns")
