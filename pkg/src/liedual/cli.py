"""Command-line surface: dimensions, branchings, verification sweeps, series.

Exit codes: 0 success, 1 verification failure, 2 input error,
3 negative multiplicity (wrong embedding), 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction as Q
from pathlib import Path

from . import branching, minrep, theta
from .branching import (
    BudgetExceededError,
    DEFAULT_BUDGET,
    NegativeMultiplicityError,
    RULE_IDS,
)
from .charalg import FormalCharacter, NonDominantError, weight_dimension
from .lattice import (
    GroupSpec,
    InvalidWeightError,
    UnsupportedTypeError,
    Weight,
    group,
    make_weight,
    weight_is_dominant,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_NEGATIVE = 3
EXIT_BUDGET = 4


@dataclass(frozen=True)
class RunConfig:
    truncation: int = 12
    budget: int = DEFAULT_BUDGET
    fmt: str = "pretty"
    jobs: int = 1

    def __post_init__(self) -> None:
        if self.truncation < 0:
            raise InvalidWeightError("truncation must be non-negative")
        if self.budget < 1:
            raise InvalidWeightError("budget must be at least 1")
        if self.jobs < 1:
            raise InvalidWeightError("jobs must be at least 1")


def resolve_budget(explicit: int | None) -> int:
    if explicit is not None:
        if explicit < 1:
            raise InvalidWeightError("budget must be at least 1")
        return explicit
    env = os.environ.get("LIEDUAL_BUDGET")
    if env is not None:
        try:
            value = int(env)
        except ValueError:
            raise InvalidWeightError(f"LIEDUAL_BUDGET={env!r} is not an integer")
        if value < 1:
            raise InvalidWeightError("LIEDUAL_BUDGET must be at least 1")
        return value
    return DEFAULT_BUDGET


def config_from_args(args: argparse.Namespace) -> RunConfig:
    max_level = getattr(args, "max_level", None)
    return RunConfig(
        truncation=12 if max_level is None else max_level,
        budget=resolve_budget(getattr(args, "budget", None)),
        fmt=getattr(args, "format", "pretty"),
        jobs=getattr(args, "jobs", 1),
    )


def _parse_fraction(text: str) -> Q:
    try:
        return Q(text)
    except (ValueError, ZeroDivisionError):
        raise InvalidWeightError(f"bad rational {text!r}") from None


def parse_group(text: str) -> GroupSpec:
    labels = [t.strip() for t in text.split("x") if t.strip()]
    if not labels:
        raise InvalidWeightError("empty group")
    return group(*labels)


def parse_weight(gs: GroupSpec, text: str, charges: tuple[Q, ...] = ()) -> Weight:
    """Parse "(x,y)x(z)" block form or a flat comma list split by factor."""
    blocks = [b.strip().strip("()") for b in text.split("x")]
    if len(blocks) != len(gs.factors):
        flat = [_parse_fraction(c) for c in text.replace("(", "").replace(")", "").split(",")]
        if len(flat) == sum(rs.ambient_dim for rs in gs.factors):
            parts = []
            pos = 0
            for rs in gs.factors:
                parts.append(flat[pos : pos + rs.ambient_dim])
                pos += rs.ambient_dim
            return make_weight(gs, parts, charges)
        raise InvalidWeightError(
            f"expected {len(gs.factors)} x-separated blocks, got {len(blocks)}"
        )
    parts = [[_parse_fraction(c) for c in block.split(",")] for block in blocks]
    return make_weight(gs, parts, charges)


def format_weight(w: Weight) -> str:
    body = "x".join("(" + ",".join(str(x) for x in p) + ")" for p in w.parts)
    if w.charges:
        body += "@" + ",".join(str(c) for c in w.charges)
    return body


def character_rows(char: FormalCharacter) -> list[list]:
    return [
        [format_weight(w), m, weight_dimension(char.group, w)]
        for w, m in char.terms
    ]


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
        return
    if fmt == "tsv":
        for row in payload.get("result", []):
            print("\t".join(str(x) for x in row))
        for check in payload.get("checks", []):
            print(
                "\t".join(
                    str(check[k]) for k in ("name", "status", "expected", "actual")
                )
            )
        if "summary" in payload:
            print(payload["summary"])
        return
    # pretty
    for row in payload.get("result", []):
        print("  ".join(str(x) for x in row))
    for check in payload.get("checks", []):
        print(f"{check['status']:4}  {check['name']}")
        if check["status"] == "FAIL":
            print(f"      expected {check['expected']}")
            print(f"      actual   {check['actual']}")
    if "summary" in payload:
        print(payload["summary"])


def _checks_payload(checks) -> list[dict]:
    return [
        {
            "name": c.name if hasattr(c, "name") else " ".join(map(str, c.params)),
            "status": c.status,
            "expected": str(c.expected),
            "actual": str(c.actual),
        }
        for c in checks
    ]


def cmd_dim(args: argparse.Namespace) -> int:
    gs = parse_group(args.group)
    w = parse_weight(gs, args.weight)
    if not weight_is_dominant(gs, w):
        raise InvalidWeightError(f"{args.weight} is not dominant for {args.group}")
    value = weight_dimension(gs, w)
    if args.format == "pretty":
        print(value)
    else:
        _emit(
            {
                "command": "dim",
                "inputs": {"group": args.group, "weight": args.weight},
                "result": [[format_weight(w), 1, value]],
                "checks": [],
            },
            args.format,
        )
    return EXIT_OK


_RULE_EMBEDDINGS = {
    "sp4_to_sp2sp2": "sp2xsp2_in_sp4",
    "sp2_to_su2su2": "su2su2_in_sp2",
    "so5_to_so3so2": "so3so2_in_so5",
    "spin10_halfspin": "spin8u1_in_spin10",
    "su6_omega3": "sp2su2u1_in_su6",
    "su6_omega3_to_sp3": "sp3_in_su6",
}


def _rule_closed(rule: str, params: list[Q], charge: int | None):
    ints = [int(p) for p in params]
    if rule == "sp4_to_sp2sp2":
        return branching.branch_sp4_to_sp2sp2(*ints)
    if rule == "sp2_to_su2su2":
        return branching.branch_sp2_to_su2su2(*ints)
    if rule == "so5_to_so3so2":
        return branching.branch_so5_to_so3so2(*params)
    if rule == "spin10_halfspin":
        return branching.branch_spin10_halfspin_to_spin8u1(*ints)
    if rule == "su6_omega3":
        return branching.branch_su6_omega3_to_sp2su2u1(ints[0], charge or 0)
    if rule == "su6_omega3_to_sp3":
        return branching.branch_su6_omega3_to_sp3(*ints).character
    raise InvalidWeightError(f"unknown rule {rule!r}")


def _rule_source(rule: str, params: list[Q]) -> Weight:
    e = branching.embedding(_RULE_EMBEDDINGS[rule])
    if rule in ("sp4_to_sp2sp2",):
        return branching.sp4_omega4_weight(int(params[0]))
    if rule in ("spin10_halfspin",):
        return branching.spin10_halfspin_weight(int(params[0]))
    if rule in ("su6_omega3", "su6_omega3_to_sp3"):
        return branching.su6_omega3_weight(int(params[0]))
    return make_weight(e.big, (tuple(params),))


def cmd_branch(args: argparse.Namespace) -> int:
    budget = resolve_budget(args.budget)
    checks: list[dict] = []
    params: list[Q] = []
    if args.target in _RULE_EMBEDDINGS:
        params = [_parse_fraction(p) for p in args.params]
        char = _rule_closed(args.target, params, args.charge)
        if args.target == "su6_omega3" and args.charge is not None and args.charge < 0:
            checks.append(
                {
                    "name": "negative charge block",
                    "status": "NOTE",
                    "expected": "charge negation of the positive block",
                    "actual": "duality convention",
                }
            )
        if args.generic:
            e = branching.embedding(_RULE_EMBEDDINGS[args.target])
            generic = branching.restrict_generic(
                e, _rule_source(args.target, params), budget
            ).decomposition
            if args.target == "su6_omega3":
                sub = {
                    w: m
                    for w, m in generic.as_dict().items()
                    if w.charges[0] == (args.charge or 0)
                }
                generic = FormalCharacter.from_dict(generic.group, sub)
            status = "MATCH" if generic.terms == char.terms else "MISMATCH"
            checks.append(
                {
                    "name": "closed form vs generic",
                    "status": status,
                    "expected": " + ".join(
                        f"{m}*{format_weight(w)}" for w, m in char.terms
                    ),
                    "actual": " + ".join(
                        f"{m}*{format_weight(w)}" for w, m in generic.terms
                    ),
                }
            )
    elif args.target in branching.CATALOG:
        e = branching.embedding(args.target)
        if len(args.params) != 1:
            raise InvalidWeightError("embeddings take one weight argument")
        hw = parse_weight(e.big, args.params[0])
        char = branching.restrict_generic(e, hw, budget).decomposition
    else:
        raise InvalidWeightError(f"unknown rule or embedding {args.target!r}")
    payload = {
        "command": "branch",
        "inputs": {
            "target": args.target,
            "params": [str(p) for p in (params or args.params)],
            "charge": args.charge,
        },
        "result": character_rows(char),
        "checks": checks,
    }
    if args.format == "pretty":
        for row in payload["result"]:
            print(f"{row[1]} * {row[0]}   dim {row[2]}")
        for check in checks:
            print(check["status"])
    else:
        _emit(payload, args.format)
    if any(c["status"] == "MISMATCH" for c in checks):
        return EXIT_FAIL
    return EXIT_OK


def _run_rule_sweep(task: tuple[str, int | None, int]) -> list[dict]:
    rule_id, max_level, budget = task
    report = branching.verify_rule(rule_id, max_level, budget)
    rows = []
    for case in report.cases:
        rows.append(
            {
                "name": f"{rule_id} {' '.join(str(p) for p in case.params)}",
                "status": case.status,
                "expected": case.expected,
                "actual": case.actual,
            }
        )
    return rows


def _suite_rules(args) -> list[dict]:
    budget = resolve_budget(args.budget)
    tasks = [(rule_id, args.max_level, budget) for rule_id in RULE_IDS]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            blocks = list(pool.map(_run_rule_sweep, tasks))
    else:
        blocks = [_run_rule_sweep(t) for t in tasks]
    return [row for block in blocks for row in block]


def _suite_infchar(args) -> list[dict]:
    report = theta.lemma_infchar_consistency(args.max_n)
    rows = _checks_payload(report.checks)
    rng = random.Random(2024)
    mismatches = 0
    for _ in range(1000):
        a = Q(rng.randint(-40, 40), rng.choice((1, 2, 4)))
        b = Q(rng.randint(-40, 40), rng.choice((1, 2, 4)))
        nu = theta.torus_character(a, b, -a - b)
        if theta.infchar_lift(nu) != theta.infchar_symmetric_form(nu):
            mismatches += 1
    rows.append(
        {
            "name": "lift vs symmetric form on 1000 seeded triples",
            "status": "PASS" if mismatches == 0 else "FAIL",
            "expected": "0 mismatches",
            "actual": f"{mismatches} mismatches",
        }
    )
    return rows


def _suite_quasisplit(args) -> list[dict]:
    return _checks_payload(theta.compare_ps_vs_stabilized().checks)


def _suite_tables(args) -> list[dict]:
    directory = Path(args.fixtures) if args.fixtures else None
    return _checks_payload(theta.verify_tables(directory).checks)


def cmd_verify(args: argparse.Namespace) -> int:
    suites = {
        "rules": _suite_rules,
        "infchar": _suite_infchar,
        "quasisplit-mult": _suite_quasisplit,
        "tables": _suite_tables,
    }
    names = list(suites) if args.suite == "all" else [args.suite]
    rows: list[dict] = []
    for name in names:
        rows.extend(suites[name](args))
    passed = sum(1 for r in rows if r["status"] == "PASS")
    ok = passed == len(rows)
    payload = {
        "command": "verify",
        "inputs": {"suite": args.suite},
        "result": [],
        "checks": rows,
        "summary": f"{'PASS' if ok else 'FAIL'} {passed}/{len(rows)}",
    }
    _emit(payload, args.format)
    return EXIT_OK if ok else EXIT_FAIL


_MINREP_GROUPS = {
    "splitJ-splitE": group("A1", "A1", "A1", "A1"),
    "splitJ-mixedE": group("C2", "A1"),
    "hermJ-mixedE": group("C2", "A1"),
}


def cmd_minrep(args: argparse.Namespace) -> int:
    cfg = config_from_args(args)
    case = args.case
    if case not in _MINREP_GROUPS:
        raise InvalidWeightError(f"unsupported case {case!r} for series output")
    gs = _MINREP_GROUPS[case]
    ktype = parse_weight(gs, args.type)
    series = minrep.multiplicity_series(case, ktype, cfg.truncation, args.charge)
    tag = None
    try:
        assignment = minrep.sign_first_appearance(case, ktype)
        tag = assignment.side
    except minrep.NotCoveredError as exc:
        if args.sign:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
    payload = {
        "command": "minrep",
        "inputs": {
            "case": case,
            "type": args.type,
            "charge": args.charge,
            "max_level": args.max_level,
        },
        "result": [[n, v] for n, v in enumerate(series.values)],
        "checks": [],
        "first_level": series.first_level,
        "stabilized_value": series.stabilized_value,
        "stabilized_kind": series.stabilized_kind,
        "tag": tag,
    }
    if args.format == "pretty":
        for n, v in enumerate(series.values):
            print(f"{n}\t{v}")
        print(f"first_level\t{series.first_level}")
        print(f"stabilized\t{series.stabilized_value} ({series.stabilized_kind})")
        if tag:
            print(f"tag\t{tag}")
    else:
        _emit(payload, args.format)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liedual",
        description=(
            "Exact branching rules, graded compact-type models, and "
            "verification sweeps for the Spin(8)-type dual pairs."
        ),
        epilog=(
            "exit codes: 0 ok, 1 verification failure, 2 input error, "
            "3 negative multiplicity, 4 budget exceeded. "
            "LIEDUAL_BUDGET overrides the generic-restriction dimension budget."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_dim = sub.add_parser("dim", help="dimension of an irreducible")
    p_dim.add_argument("group", help="type label or x-joined product, e.g. C4")
    p_dim.add_argument("weight", help="comma-separated coordinates, e.g. 1,1,1,1")
    p_dim.add_argument("--format", choices=("pretty", "json", "tsv"), default="pretty")
    p_dim.set_defaults(func=cmd_dim)

    p_branch = sub.add_parser("branch", help="closed-form rule or generic restriction")
    p_branch.add_argument("target", help="rule id or embedding name")
    p_branch.add_argument("params", nargs="*", help="rule parameters or a weight")
    p_branch.add_argument("--charge", type=int, default=None)
    p_branch.add_argument("--generic", action="store_true", help="replay the oracle")
    p_branch.add_argument("--budget", type=int, default=None)
    p_branch.add_argument("--format", choices=("pretty", "json", "tsv"), default="pretty")
    p_branch.set_defaults(func=cmd_branch)

    p_verify = sub.add_parser("verify", help="verification sweeps")
    p_verify.add_argument(
        "suite", choices=("rules", "infchar", "quasisplit-mult", "tables", "all")
    )
    p_verify.add_argument("--max-level", type=int, default=None)
    p_verify.add_argument("--max-n", type=int, default=10)
    p_verify.add_argument("--fixtures", default=None)
    p_verify.add_argument("--budget", type=int, default=None)
    p_verify.add_argument("--jobs", type=int, default=1)
    p_verify.add_argument("--format", choices=("pretty", "json", "tsv"), default="pretty")
    p_verify.set_defaults(func=cmd_verify)

    p_minrep = sub.add_parser("minrep", help="graded multiplicity series")
    p_minrep.add_argument("case", help="splitJ-splitE, splitJ-mixedE or hermJ-mixedE")
    p_minrep.add_argument("--type", required=True, help='e.g. "0,0,0,0" or "(2,0)x0"')
    p_minrep.add_argument("--charge", type=int, default=None)
    p_minrep.add_argument("--max-level", type=int, default=12)
    p_minrep.add_argument("--sign", action="store_true", help="require a sign tag")
    p_minrep.add_argument("--format", choices=("pretty", "json", "tsv"), default="pretty")
    p_minrep.set_defaults(func=cmd_minrep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NegativeMultiplicityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (
        InvalidWeightError,
        UnsupportedTypeError,
        NonDominantError,
        minrep.InvalidTypeError,
        minrep.NotCoveredError,
        theta.FixtureError,
        KeyError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
