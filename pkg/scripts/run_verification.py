#!/usr/bin/env python3
"""Run every verification sweep at the acceptance ranges and summarize.

Equivalent to `liedual verify all` with the full rule levels; exits nonzero
on any failure.
"""

import sys
import time

from liedual.branching import verify_rule
from liedual.theta import compare_ps_vs_stabilized, lemma_infchar_consistency, verify_tables

RULE_RANGES = {
    "sp4_to_sp2sp2": 4,
    "sp2_to_su2su2": 8,
    "so5_to_so3so2": 5,
    "spin10_halfspin": 4,
    "su6_omega3": 4,
    "su6_omega3_to_sp3": 4,
}


def main() -> int:
    start = time.perf_counter()
    failed = 0
    total = 0
    for rule_id, level in RULE_RANGES.items():
        report = verify_rule(rule_id, level)
        bad = [c for c in report.cases if c.status != "PASS"]
        total += len(report.cases)
        failed += len(bad)
        print(f"rules/{rule_id}: {len(report.cases) - len(bad)}/{len(report.cases)}")
        for c in bad[:5]:
            print(f"  FAIL {c.params}: expected {c.expected} got {c.actual}")
    for name, report in [
        ("infchar", lemma_infchar_consistency(10)),
        ("quasisplit-mult", compare_ps_vs_stabilized(12, 4)),
        ("tables", verify_tables()),
    ]:
        ok = sum(1 for c in report.checks if c.status == "PASS")
        total += len(report.checks)
        failed += len(report.checks) - ok
        print(f"{name}: {ok}/{len(report.checks)}")
    status = "PASS" if failed == 0 else "FAIL"
    print(f"{status} {total - failed}/{total} in {time.perf_counter() - start:.1f}s")
    return 0 if failed == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
