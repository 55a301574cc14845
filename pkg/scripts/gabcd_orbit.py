"""Orbit of a G_abcd parameter tuple, its root system, and a discrimination check.

Usage: python3 scripts/gabcd_orbit.py 1 2 3 4 [--against 1 2 3 5]
"""

import argparse

from entangle_lab.slocc import cross_ratio, gabcd_orbit, gabcd_quartic, gabcd_roots, slocc_discriminate
from entangle_lab.states import gabcd_state


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("params", nargs=4, type=complex)
    ap.add_argument("--against", nargs=4, type=complex)
    args = ap.parse_args()
    p = tuple(args.params)
    big_a, big_b = gabcd_quartic(p)
    roots = gabcd_roots(p).roots
    print(f"A = {big_a:.6g}, B = {big_b:.6g}")
    print("roots:", ", ".join(repr(z) for z in roots))
    print(f"cross-ratio: {cross_ratio(*roots):.9g}")
    orb = gabcd_orbit(p)
    print(f"orbit size: {len(orb)}")
    for t in sorted(orb, key=lambda t: tuple((z.real, z.imag) for z in t))[:8]:
        print("  ", tuple(z.real if z.imag == 0 else z for z in t))
    if args.against:
        op = slocc_discriminate(gabcd_state(p), gabcd_state(tuple(args.against)))
        print("SLOCC-equivalent:", op is not None)


if __name__ == "__main__":
    main()
