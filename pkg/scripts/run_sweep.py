"""Run the randomized verification sweep and print per-checker tallies.

    python3 scripts/run_sweep.py --dims 2,3,4 --samples 20 --functions pow:0.5,log,pow:1.5
"""

import argparse
import time
from collections import defaultdict

from opineq.checks import SweepConfig, run_sweep, summarize


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--dims", default="2,3,4,5,6")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--functions", default="pow:0.5,log")
    p.add_argument("--norms", default="op,tr,fro,s:3,kf:2")
    args = p.parse_args()

    cfg = SweepConfig(dims=[int(d) for d in args.dims.split(",")], samples=args.samples, seed=args.seed,
                      functions=args.functions.split(","), norms=args.norms.split(","))
    t0 = time.perf_counter()
    reports = run_sweep(cfg)
    elapsed = time.perf_counter() - t0

    # tightest observed ratio lhs/rhs per checker shows how much slack each bound has
    tally = defaultdict(lambda: [0, 0, 0.0])
    for r in reports:
        row = tally[r.check_id]
        row[0] += 1
        row[1] += r.unexpected
        if r.rhs > 0 and r.error is None and not r.expected_fail:
            row[2] = max(row[2], r.lhs / r.rhs)
    print(f"{'checker':<26}{'count':>8}{'bad':>6}{'max lhs/rhs':>14}")
    for cid in sorted(tally):
        n, bad, worst = tally[cid]
        print(f"{cid:<26}{n:>8}{bad:>6}{worst:>14.4f}")
    s = summarize(reports)
    print(f"\ntotal={s['total']} pass={s['pass']} expected_fail={s['expected_fail']} "
          f"unexpected_fail={s['unexpected_fail']}  ({elapsed:.1f}s)")


if __name__ == "__main__":
    main()
