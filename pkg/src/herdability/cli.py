"""Command-line front end.

Exit codes: 0 herdable, 1 not herdable, 2 unknown, 64 input error.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import __version__
from .columns import verdict_from_columns
from .ensemble import (ConstantSign, EnsembleConfig, herdability_robustness_oracle,
                       sign_definiteness_oracle)
from .exceptions import (DimensionMismatch, HerdabilityError, InputError,
                         NotOutBranching, NotSingleInput, NotStable, TooManySelections)
from .graphs import (not_herdable_by_connectability,
                     positive_system_check, sign_balanced_closure, sign_definite_c,
                     sign_strictly_herdable, signed_reach_sets, structural_balance)
from .model import Status, Verdict, load_system
from .outbranching import (completely_herdable_tree, detect_outbranching,
                           enumerate_maximal_herdable, max_herdable_size)
from .reachability import (ab_necessary_check, completely_herdable, controllability_matrix,
                           grammian, herdable_subset, herdable_via_grammian)
from .report import Analysis, Report

EXIT = {Status.HERDABLE: 0, Status.NOT_HERDABLE: 1, Status.UNKNOWN: 2}
EXIT_INPUT = 64
WEIGHTED_ONLY = ("check", "subset", "grammian")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _lp_witness(sys_, tol):
    """Witness from the LP, for verdicts reached by rules that carry none."""
    v = completely_herdable(sys_, tol)
    return v.witness if v.herdable else None


def cmd_check(src, args, report):
    sys_ = src.system
    tol = args.tol
    chain = []

    def finish(verdict, witness=None):
        chain.append(verdict.evidence)
        if verdict.herdable and witness is None:
            witness = verdict.witness if verdict.witness is not None else _lp_witness(sys_, tol)
        final = Verdict(verdict.status, " > ".join(chain), witness,
                        tuple(range(1, sys_.n + 1)))
        report.add(Analysis.from_verdict("check", final,
                                         data={"matrix": "controllability"}
                                         if witness is not None else None))
        return final.status

    v = not_herdable_by_connectability(sys_)
    report.add(Analysis.from_verdict("connectability", v))
    if v.status is Status.NOT_HERDABLE:
        return finish(v)
    chain.append(v.evidence)

    v = positive_system_check(sys_)
    report.add(Analysis.from_verdict("positive-system", v))
    if v.status is not Status.UNKNOWN:
        return finish(v)
    chain.append(v.evidence)

    c = controllability_matrix(sys_)
    v = verdict_from_columns(c, tol)
    report.add(Analysis.from_verdict("column-rules", v))
    if v.herdable:
        return finish(v)
    chain.append(v.evidence)

    v = ab_necessary_check(sys_, tol)
    report.add(Analysis.from_verdict("ab-necessary", v, data={"matrix": "[A B]"}))
    if v.status is Status.NOT_HERDABLE:
        return finish(v)
    chain.append(v.evidence)

    v = herdable_subset(c, range(1, sys_.n + 1), tol)
    report.add(Analysis.from_verdict("lp", v, data={"matrix": "controllability"}))
    return finish(v)


def _parse_nodes(text, n):
    try:
        nodes = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"--nodes must be a comma separated list of integers, got {text!r}",
                         field="--nodes")
    if not nodes or min(nodes) < 1 or max(nodes) > n:
        raise InputError(f"--nodes must name states in 1..{n}", field="--nodes")
    return nodes


def cmd_subset(src, args, report):
    nodes = _parse_nodes(args.nodes, src.system.n)
    v = herdable_subset(controllability_matrix(src.system), nodes, args.tol)
    report.add(Analysis.from_verdict("subset", v, data={"nodes": nodes,
                                                        "matrix": "controllability"}))
    return v.status


def _reach_table(rs, m):
    rows = []
    for d in range(1, rs.max_depth + 1):
        for j in range(1, m + 1):
            rows.append({"d": d, "j": j, "P": rs.p(d, j), "N": rs.n(d, j)})
    return rows


def cmd_sign(src, args, report):
    p = src.pattern
    unit = p.unit_realization()
    rs = signed_reach_sets(p)
    report.add(Analysis("reach-sets", Status.UNKNOWN.value, "signed-walk-propagation",
                        data={"table": _reach_table(rs, p.m)}))
    bal = structural_balance(unit)
    bal_data = ({"partition": bal.partition} if bal.balanced else
                {"violating_semicycle": [list(s) for s in bal.violating_semicycle]})
    report.add(Analysis("structural-balance", Status.UNKNOWN.value,
                        "balanced" if bal.balanced else "unbalanced", data=bal_data))
    definite, offending = sign_definite_c(p)
    evidence = "sign-definite" if definite else "sign-ambiguous"
    if bal.balanced:
        evidence += " (implied by structural balance)"
    report.add(Analysis("sign-definite-c", Status.UNKNOWN.value, evidence,
                        data={"definite": definite,
                              "offending": [list(t) for t in offending]}))
    report.add(Analysis("sign-strictly-herdable", Status.UNKNOWN.value, "xor-empty-layers",
                        data={"states": sign_strictly_herdable(p)}))

    conn = not_herdable_by_connectability(unit)
    report.add(Analysis.from_verdict("connectability", conn))
    if conn.status is Status.NOT_HERDABLE:
        final = conn
        report.add(Analysis.from_verdict("sign-verdict", final))
        return final.status
    final = sign_balanced_closure(p)
    witness = None
    data = {}
    if final.herdable:
        witness = _lp_witness(unit, args.tol)
        data = {"witness_realization": "unit magnitudes", "matrix": "controllability"}
    else:
        data = {"note": "structural balance together with input connectability is an "
                        "open sufficient condition; not used as a verdict"} if bal.balanced else {}
    report.add(Analysis.from_verdict("sign-verdict", final, data=data, witness=witness))
    return final.status


def cmd_tree(src, args, report):
    sys_ = src.system
    try:
        ob = detect_outbranching(sys_)
    except (NotSingleInput, NotOutBranching) as exc:
        data = {"reason": str(exc)}
        if isinstance(exc, NotOutBranching) and exc.node is not None:
            data["node"] = exc.node
        report.add(Analysis("tree", Status.UNKNOWN.value, "not-outbranching", data=data))
        return Status.UNKNOWN
    size = max_herdable_size(ob)
    layers = [{"d": d, "P": ob.layer_p[d], "N": ob.layer_n[d]} for d in range(1, ob.d_max + 1)]
    data = {"d_max": ob.d_max, "max_size": size, "layers": layers}
    try:
        sels = enumerate_maximal_herdable(ob)
        data["maximal_sets"] = [sorted(s.nodes) for s in sels]
        data["choices"] = [list(s.choices) for s in sels]
    except TooManySelections as exc:
        data["maximal_sets_truncated"] = exc.count
    v = completely_herdable_tree(ob)
    witness = None
    if v.herdable:
        target = sys_ if src.mode == "weighted" else src.pattern.unit_realization()
        witness = _lp_witness(target, args.tol)
        data["matrix"] = "controllability"
        if src.mode == "pattern":
            data["witness_realization"] = "unit magnitudes"
    report.add(Analysis.from_verdict("tree", v, data=data, witness=witness))
    return v.status


def cmd_ensemble(src, args, report):
    p = src.pattern
    cfg = EnsembleConfig(seed=args.seed, trials=args.trials)
    sd = sign_definiteness_oracle(p, cfg)
    if isinstance(sd, ConstantSign):
        report.add(Analysis("sign-definiteness-oracle", Status.UNKNOWN.value, "constant-sign",
                            data={"trials": sd.trials, "signs": sd.signs}))
    else:
        report.add(Analysis("sign-definiteness-oracle", Status.UNKNOWN.value,
                            "counterexample-pair",
                            data={"trials": [sd.trial_a, sd.trial_b], "entry": sd.entry,
                                  "A": [sd.system_a.a, sd.system_b.a],
                                  "B": [sd.system_a.b, sd.system_b.b]}))
    rob = herdability_robustness_oracle(p, cfg)
    data = {"kind": rob.kind, "herdable": rob.herdable, "not_herdable": rob.not_herdable,
            "trials": cfg.trials, "seed": cfg.seed}
    if rob.first_not_herdable is not None:
        data["first_not_herdable_trial"] = rob.first_not_herdable
        status, evidence = Status.NOT_HERDABLE, "realization-not-herdable"
    else:
        status, evidence = Status.UNKNOWN, "all-sampled-herdable"
    report.add(Analysis("herdability-robustness", status.value, evidence, data=data))
    return status


def _horizon(text):
    if text.lower() in ("inf", "infinite", "infinity"):
        return math.inf
    try:
        value = float(text)
    except ValueError:
        raise InputError(f"--horizon must be a positive number or 'inf', got {text!r}",
                         field="--horizon")
    if not value > 0 or not math.isfinite(value):
        raise InputError("--horizon must be positive", field="--horizon")
    return value


def cmd_grammian(src, args, report):
    horizon = _horizon(args.horizon)
    try:
        v = herdable_via_grammian(src.system, horizon, tol=args.tol)
        w = grammian(src.system, horizon)
    except NotStable as exc:
        report.add(Analysis("grammian", Status.UNKNOWN.value, "not-stable",
                            data={"reason": str(exc)}))
        return Status.UNKNOWN
    report.add(Analysis.from_verdict("grammian", v, data={"W": w, "matrix": "grammian"}))
    return v.status


COMMANDS = {
    "check": cmd_check,
    "subset": cmd_subset,
    "sign": cmd_sign,
    "tree": cmd_tree,
    "ensemble": cmd_ensemble,
    "grammian": cmd_grammian,
}


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("system", help="JSON file with fields A, B and optional mode")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--tol", type=float, default=1e-9)

    parser = _Parser(prog="herdability", description="Herdability analysis of LTI systems.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("check", parents=[common], help="complete herdability pipeline")
    p = sub.add_parser("subset", parents=[common], help="herdability of a set of states")
    p.add_argument("--nodes", required=True, help="comma separated 1-based states")
    sub.add_parser("sign", parents=[common], help="sign-pattern analyses")
    sub.add_parser("tree", parents=[common], help="out-branching enumeration")
    p = sub.add_parser("ensemble", parents=[common], help="Monte Carlo oracles")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p = sub.add_parser("grammian", parents=[common], help="grammian range test")
    p.add_argument("--horizon", default="inf")
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if not args.tol > 0:
            raise InputError("--tol must be positive", field="--tol")
        if args.command == "ensemble" and (args.trials < 1 or args.seed < 0):
            raise InputError("--trials must be >= 1 and --seed >= 0", field="--trials")
        try:
            src = load_system(args.system)
        except OSError as exc:
            raise InputError(f"cannot read {args.system}: {exc.strerror}")
        if src.mode == "pattern" and args.command in WEIGHTED_ONLY:
            raise InputError(f"'{args.command}' needs a weighted system; "
                             "the input is in pattern mode", field="mode")
        report = Report(src)
        status = COMMANDS[args.command](src, args, report)
    except UsageError as exc:
        print(f"herdability: error: {exc}", file=stderr)
        return EXIT_INPUT
    except (InputError, DimensionMismatch) as exc:
        where = f" [field {exc.field}]" if getattr(exc, "field", None) else ""
        print(f"herdability: input error{where}: {exc}", file=stderr)
        return EXIT_INPUT
    except HerdabilityError as exc:
        print(f"herdability: {exc}", file=stderr)
        return EXIT[Status.UNKNOWN]
    stdout.write(report.to_json() if args.format == "json" else report.to_text())
    return EXIT[status]


def main():
    sys.exit(run())
