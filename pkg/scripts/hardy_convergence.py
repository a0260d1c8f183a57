"""Mesh study for the radial Rayleigh-quotient oracle.

The ground mode is represented exactly by P1 elements, so its error sits at
round-off; the first excited radial eigenvalue shows the O(h^2) rate.
"""
import argparse
import math

from anyonbounds.hardy import (
    AnnulusSpec, SymmetryClass, eigen_roundoff, hardy_mode_constant,
    mode_eigenvalues, rayleigh_oracle,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--r-inner", type=float, default=0.1)
    ap.add_argument("--r-outer", type=float, default=1.0)
    ap.add_argument("--flux-quanta", type=float, default=1 / 3)
    args = ap.parse_args()

    ann = AnnulusSpec(args.r_inner, args.r_outer, 2 * math.pi * args.flux_quanta)
    cls = SymmetryClass.ANTIPODAL_SYMMETRIC
    target = hardy_mode_constant(ann.flux, cls)
    print(f"target {target:.15f}")
    print(f"{'mesh':>6} {'ground gap':>12} {'roundoff':>10} {'second':>16} {'change':>10}")
    prev = None
    for m in (50, 100, 200, 400, 800, 1600):
        gap = target - rayleigh_oracle(ann, cls, 8, m)
        second = mode_eigenvalues(ann, 0, m, 2)[1]
        change = "" if prev is None else f"{abs(second - prev):.3e}"
        print(f"{m:6d} {gap:12.3e} {eigen_roundoff(ann, m):10.1e} {second:16.10f} {change:>10}")
        prev = second


if __name__ == "__main__":
    main()
