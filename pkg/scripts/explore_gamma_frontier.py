#!/usr/bin/env python3
"""How does the largest certified family grow with the lattice radius?

For one prime and dimension, runs the search at increasing numerator
bounds and prints n_max per angle and bound, showing how quickly the
ultrametric geometry saturates.  Angles with absolute value above 1 are
impossible for real unit vectors but perfectly attainable p-adically; the
table makes that visible without claiming anything beyond the lattice.

    python scripts/explore_gamma_frontier.py --p 5 --d 3 --bounds 2 4 6 8
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from padic_lines.padic import Prime, render_abs
from padic_lines.search import SearchSpace, run_search


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--p", type=int, default=5)
    parser.add_argument("--d", type=int, default=3)
    parser.add_argument("--bounds", type=int, nargs="+", default=[2, 4, 6])
    parser.add_argument("--max-n", type=int, default=16)
    args = parser.parse_args()

    p = Prime(args.p)
    print("B\tgamma\tn_max\tbound_rhs\tholds")
    for bound in args.bounds:
        result = run_search(SearchSpace(p, args.d, bound, max_n=args.max_n))
        if result.counterexamples:
            print("BOUND VIOLATION", file=sys.stderr)
            return 4
        if not result.frontier:
            print(f"{bound}\t-\t-\t-\t-")
        for row in result.frontier:
            print(
                f"{bound}\t{render_abs(row.gamma, p)}\t{row.n_max}"
                f"\t{render_abs(row.bound_rhs, p)}\t{'true' if row.holds else 'false'}"
            )
    return 0


if __name__ == "__main__":
    sys.exit(main())
