"""Reproduce the two Chebyshev examples and print per-stage statistics.

    python3 scripts/reproduce_examples.py [--prune basic]
"""

import argparse
import time
from pathlib import Path

from tropelim.cheb import ChebDataset, fit, read_csv, to_tropical
from tropelim.eliminate import SolverOptions
from tropelim.oracle import vertex_oracle

DATA = Path(__file__).resolve().parents[1] / "data"

CASES = [
    ("example 1", "example1.csv", ["0"] * 3, ["1"] * 3, None),
    ("example 2 (printed data)", "example2.csv", ["-1/4"] * 3, ["1/4"] * 3, None),
    ("example 2 (first nine rows)", "example2.csv", ["-1/4"] * 3, ["1/4"] * 3, 9),
]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--prune", default="basic", choices=("none", "basic", "dominance"))
    args = ap.parse_args()

    for title, csv_name, lo, hi, rows in CASES:
        X, Y = read_csv((DATA / csv_name).read_text())
        if rows:
            X, Y = X[:rows], Y[:rows]
        data = ChebDataset.make(X, Y, lo, hi)
        t0 = time.perf_counter()
        result, sol = fit(data, SolverOptions(prune=args.prune))
        elapsed = time.perf_counter() - t0
        print(f"{title}: error {result.error}, theta {tuple(str(t) for t in result.theta)}"
              f"  [{elapsed:.2f}s, prune={args.prune}]")
        for s in sol.trace.stats:
            print(f"    stage {s.level}: raw {s.raw_count:>7}  kept {s.pruned_count:>7}")
        ref = vertex_oracle(to_tropical(data), max_monomials=2 * data.size)
        print(f"    vertex oracle: {ref}")


if __name__ == "__main__":
    main()
