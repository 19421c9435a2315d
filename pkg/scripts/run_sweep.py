#!/usr/bin/env python3
"""Exhaustive lattice sweep: certify every equiangular family the lattice
admits and print the per-angle frontier table.

The default parameters (p in {2,3,5}, d in {1,2,3}, numerator bound 6,
denominators {1, p, p^2}) reproduce the committed golden table:

    python scripts/run_sweep.py --golden-out tests/golden/frontier_sweep.tsv

Any certified configuration violating a bound aborts with exit code 4.
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from padic_lines.padic import Prime
from padic_lines.search import SearchSpace, frontier_table, run_search


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--primes", type=int, nargs="+", default=[2, 3, 5])
    parser.add_argument("--dims", type=int, nargs="+", default=[1, 2, 3])
    parser.add_argument("--bound", type=int, default=6, help="numerator bound")
    parser.add_argument("--max-n", type=int, default=12)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--golden-out", type=Path, default=None)
    args = parser.parse_args()

    results = []
    t0 = time.monotonic()
    for p in args.primes:
        for d in args.dims:
            space = SearchSpace(Prime(p), d, args.bound, max_n=args.max_n)
            result = run_search(space, workers=args.workers)
            results.append(result)
            stats = result.stats
            print(
                f"# p={p} d={d}: {stats['unit_vectors']} unit vectors, "
                f"{stats['gammas_attained']} angles, "
                f"{stats['cliques_certified']} certified, "
                f"{stats['cliques_not_certified']} not certified",
                file=sys.stderr,
            )
            if result.counterexamples:
                print("BOUND VIOLATION in sweep", file=sys.stderr)
                return 4
    table = frontier_table(results)
    sys.stdout.write(table)
    print(f"# sweep finished in {time.monotonic() - t0:.1f}s", file=sys.stderr)
    if args.golden_out is not None:
        args.golden_out.parent.mkdir(parents=True, exist_ok=True)
        args.golden_out.write_text(table)
        print(f"# wrote {args.golden_out}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
