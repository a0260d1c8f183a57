"""Write (x, y, f) tables of the eye-domain Hardy weight for plotting."""
import argparse
from pathlib import Path

from anyonbounds.conformal import eye_sample_grid, weight_table_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--radii", type=float, nargs="+", default=[0.0, 0.3, 0.6, 0.9])
    ap.add_argument("--size", type=int, default=60)
    ap.add_argument("--outdir", default="weights")
    args = ap.parse_args()

    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for big_r in args.radii:
        path = out / f"weight_R{big_r:.2f}.csv"
        path.write_text(weight_table_csv(big_r, eye_sample_grid(big_r, args.size)))
        print(path)


if __name__ == "__main__":
    main()
