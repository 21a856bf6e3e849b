"""Measured stage sizes against the M^2/4 + M bound on random problems.

    python3 scripts/growth_stats.py --arity 3 --monomials 6 --count 50
"""

import argparse
import statistics

from tropelim.eliminate import SolverOptions, backward_eliminate
from tropelim.oracle import GeneratorParams, random_problem


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--arity", type=int, default=3)
    ap.add_argument("--monomials", type=int, default=6)
    ap.add_argument("--count", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'prune':<10} {'level':>5} {'mean raw':>10} {'max raw':>8} {'mean kept':>10} {'max ratio':>10}")
    for prune in ("none", "basic", "dominance"):
        raw, kept, ratio = {}, {}, {}
        for i in range(args.count):
            prob = random_problem(GeneratorParams(arity=args.arity, monomials=args.monomials,
                                                  seed=args.seed + i))
            stats = backward_eliminate(prob, SolverOptions(prune=prune)).stats
            for prev, cur in zip(stats, stats[1:]):
                bound = prev.pruned_count ** 2 / 4 + prev.pruned_count
                raw.setdefault(cur.level, []).append(cur.raw_count)
                kept.setdefault(cur.level, []).append(cur.pruned_count)
                ratio.setdefault(cur.level, []).append(cur.raw_count / bound if bound else 0.0)
        for level in sorted(raw, reverse=True):
            print(f"{prune:<10} {level:>5} {statistics.mean(raw[level]):>10.1f} {max(raw[level]):>8}"
                  f" {statistics.mean(kept[level]):>10.1f} {max(ratio[level]):>10.3f}")


if __name__ == "__main__":
    main()
