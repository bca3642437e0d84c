"""Empirical-to-theoretical error ratios of the two Simpson rules.

For each operator monotone function, draws random PD pairs and reports the
distribution of |||estimate - integral||| / (C |||B - A||| max ||f'||). The
last column rescales the 1/3-rule ratio to the constant 5/36, which is the
value a direct Peano-kernel bound gives for this setting.
"""

import argparse

import numpy as np

from opineq.checks import check_simpson
from opineq.hermitian import make_rng, random_pd_from
from opineq.norms import parse_norm


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--pairs", type=int, default=200)
    p.add_argument("--dim", type=int, default=4)
    p.add_argument("--norm", default="op")
    p.add_argument("--lo", type=float, default=0.05)
    p.add_argument("--hi", type=float, default=20.0)
    args = p.parse_args()
    kind = parse_norm(args.norm)

    print(f"{'function':<10}{'rule':<13}{'median':>9}{'p99':>9}{'max':>9}{'max@5/36':>10}")
    for fid in ("pow:0.1", "pow:0.5", "pow:0.9", "log"):
        for rule in ("onethird", "threeeighth"):
            ratios = []
            for i in range(args.pairs):
                rng = make_rng(7, i)
                A = random_pd_from(rng, args.dim, (args.lo, args.hi))
                B = random_pd_from(rng, args.dim, (args.lo, args.hi))
                ratios.append(check_simpson(fid, A, B, rule, kind).details["ratio"])
            r = np.array(ratios)
            tight = f"{r.max() * (5 / 32) / (5 / 36):>10.4f}" if rule == "onethird" else f"{'':>10}"
            print(f"{fid:<10}{rule:<13}{np.median(r):>9.4f}{np.quantile(r, 0.99):>9.4f}{r.max():>9.4f}{tight}")


if __name__ == "__main__":
    main()
