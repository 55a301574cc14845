"""Pair concurrence and entanglement ratio for excitation states of the Platonic edge graphs.

Usage: python3 scripts/platonic_table.py
"""

from entangle_lab.hypergraph import distance, platonic, predicted_concurrence, predicted_ratio
from entangle_lab.measures import entanglement_ratio, two_site_concurrence
from entangle_lab.states import excitation_state


def main():
    print(f"{'solid':8} {'N':>3} {'dist':>4} {'C':>7} {'C pred':>7} {'Gamma':>7} {'G pred':>7}")
    for solid in ("tetra", "octa", "cube", "icosa", "dodeca"):
        g = platonic(solid)
        psi = excitation_state(g)
        reps = {}
        for v in range(2, g.n + 1):
            reps.setdefault(distance(g, 1, v), v)
        for d, v in sorted(reps.items()):
            c = two_site_concurrence(psi, 1, v)
            print(f"{solid:8} {g.n:3d} {d:4d} {c:7.3f} {predicted_concurrence(g, 1, v):7.3f} "
                  f"{entanglement_ratio(psi, 1):7.3f} {predicted_ratio(g, 1):7.3f}")


if __name__ == "__main__":
    main()
