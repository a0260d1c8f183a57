"""Tabulate C(alpha, N) on a uniform alpha grid for several particle numbers."""
import argparse
import csv
import sys

import numpy as np

from anyonbounds.constants import c_alpha_n


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[2, 3, 5, 10, 50])
    ap.add_argument("--steps", type=int, default=401)
    ap.add_argument("--out", default="-")
    args = ap.parse_args()

    alphas = np.linspace(0, 2, args.steps)
    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["alpha", *[f"N={n}" for n in args.n]])
    for a in alphas:
        w.writerow([f"{a:.6g}", *[f"{c_alpha_n(a, n):.10g}" for n in args.n]])
    if fh is not sys.stdout:
        fh.close()


if __name__ == "__main__":
    main()
