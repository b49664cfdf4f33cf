#!/usr/bin/env python3
"""Print the graded dual-pair decomposition tables for one case.

Usage: python scripts/graded_decompositions.py [case] [max_level]
Cases: splitJ-splitE, splitJ-mixedE, hermJ-mixedE, e62-spin8.
"""

import sys

from liedual.charalg import weight_dimension
from liedual.minrep import DUALPAIR_CASES, NotCoveredError, dualpair_graded


def describe(w) -> str:
    body = " x ".join("(" + ",".join(str(x) for x in p) + ")" for p in w.parts)
    if w.charges:
        body += "  chi(" + ",".join(str(c) for c in w.charges) + ")"
    return body


def main() -> int:
    case = sys.argv[1] if len(sys.argv) > 1 else "splitJ-mixedE"
    top = int(sys.argv[2]) if len(sys.argv) > 2 else 4
    if case not in DUALPAIR_CASES:
        print(f"unknown case {case!r}; choose from {DUALPAIR_CASES}", file=sys.stderr)
        return 2
    graded = dualpair_graded(case, top)
    for n in range(top + 1):
        char = graded.levels[n]
        print(f"level {n}  (dim {char.total_dimension()})")
        for w, mult in char.terms:
            try:
                sign = f"  sign {graded.sign_of(n, w):+d}"
            except NotCoveredError:
                sign = ""
            dim = weight_dimension(char.group, w)
            print(f"  {mult} * {describe(w)}  dim {dim}{sign}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
