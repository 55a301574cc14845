"""Particle-loss resistance of the psi^N_m family, with the PPT eigenvalue of the two-site reduction.

Usage: python3 scripts/resistance_table.py [--max-n 7]
"""

import argparse

import numpy as np

from entangle_lab.linalg import partial_trace, partial_transpose
from entangle_lab.measures import resistance
from entangle_lab.states import psi_family


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=7)
    args = ap.parse_args()
    print(f"{'N':>2} {'m':>2} {'resistance':>10} {'exact':>5}  per size")
    for n in range(3, args.max_n + 1):
        for m in range(0, n - 1):
            r = resistance(psi_family(n, m))
            sizes = " ".join(f"{k}:{v}" for k, v in sorted(r.per_size.items()))
            print(f"{n:2d} {m:2d} {r.m:10d} {str(r.exact):>5}  {sizes}")
    print()
    # the closed form refers to the unnormalized reduction, so only signs are comparable
    print(f"{'N':>2} {'min PPT eig (m=N-2)':>20} {'-N^2+3N-4':>10}")
    for n in range(4, args.max_n + 2):
        rho = partial_trace(psi_family(n, n - 2), [1, 2])
        ev = np.linalg.eigvalsh(partial_transpose(rho, [1])).min()
        print(f"{n:2d} {ev:20.6f} {-n * n + 3 * n - 4:10d}")


if __name__ == "__main__":
    main()
