"""Energy efficiency versus inter-user distance at a fixed cell distance.

Writes the sweep CSV and prints where each cooperative scheme drops below
the traditional one.
"""

import argparse
from pathlib import Path

from netcoop.config import load_config
from netcoop.experiments import SweepRow, SweepSpec, run_sweep
from netcoop.output import write_csv


def crossover(rows, attr):
    for prev, row in zip(rows, rows[1:]):
        if getattr(prev, attr) > prev.eta_traditional_bpj and getattr(row, attr) <= row.eta_traditional_bpj:
            return prev.swept_m, row.swept_m
    return None


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--config")
    ap.add_argument("--out", default="results/inter_user_sweep.csv")
    ap.add_argument("--cell-distance", type=float, default=1000.0)
    ap.add_argument("--points", type=int, default=50)
    args = ap.parse_args()

    d = args.cell_distance
    cfg = load_config(args.config).with_geometry(d_1b=d, d_2b=d)
    rows = run_sweep(cfg, SweepSpec("inter_user_distance", 1.0, 1e4, args.points, "log"))
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    write_csv(rows, args.out, SweepRow.columns)
    print(f"wrote {args.out}")
    for scheme in ("intra", "inter"):
        hit = crossover(rows, f"eta_{scheme}_bpj")
        where = "no crossover in range" if hit is None else f"crossover between {hit[0]:.1f} and {hit[1]:.1f} m"
        print(f"{scheme}: {where}")


if __name__ == "__main__":
    main()
