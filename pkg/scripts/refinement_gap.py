"""How much the max-endpoint perturbation bound gains over the f'(a) bound.

For t^r and log, prints the ratio max(||f'(A)||, ||f'(B)||) / f'(a) with a
common lower bound a = c * min(lambda_min(A), lambda_min(B)) for a few c <= 1.
A ratio of 1 at c = 1 is expected; smaller values mean a sharper bound.
"""

import numpy as np

from opineq.checks import check_perturbation
from opineq.hermitian import eig_hermitian, make_rng, random_pd_from
from opineq.norms import OPERATOR


def main():
    shrink = (1.0, 0.9, 0.5, 0.1)
    print(f"{'function':<10}" + "".join(f"{'c=' + str(c):>10}" for c in shrink))
    for fid in ("pow:0.3", "pow:0.5", "pow:0.9", "log"):
        cols = []
        for c in shrink:
            vals = []
            for i in range(100):
                rng = make_rng(11, i)
                A, B = random_pd_from(rng, 4, (0.25, 4.0)), random_pd_from(rng, 4, (0.25, 4.0))
                floor = min(eig_hermitian(A).eigenvalues[0], eig_hermitian(B).eigenvalues[0])
                rep = check_perturbation(fid, A, B, "refinement", OPERATOR, a=c * floor)
                vals.append(rep.rhs / rep.details["rhs_fprime_a"])
            cols.append(np.mean(vals))
        print(f"{fid:<10}" + "".join(f"{v:>10.4f}" for v in cols))


if __name__ == "__main__":
    main()
