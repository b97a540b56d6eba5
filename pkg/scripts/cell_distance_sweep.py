"""Energy efficiency versus cell distance for two inter-user distances.

Writes one CSV per inter-user distance and prints the smallest cooperative
gain over the traditional scheme.
"""

import argparse
from pathlib import Path

from netcoop.config import load_config
from netcoop.experiments import SweepRow, SweepSpec, run_sweep
from netcoop.output import write_csv


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--config")
    ap.add_argument("--outdir", default="results")
    ap.add_argument("--points", type=int, default=50)
    ap.add_argument("--d12", type=float, nargs="+", default=[5.0, 20.0])
    args = ap.parse_args()

    base = load_config(args.config)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    sweep = SweepSpec("cell_distance", 200.0, 2000.0, args.points)
    for d in args.d12:
        rows = run_sweep(base.with_geometry(d_12=d, d_21=d), sweep)
        path = outdir / f"cell_sweep_d12_{d:g}m.csv"
        write_csv(rows, str(path), SweepRow.columns)
        gain = min(min(r.eta_intra_bpj, r.eta_inter_bpj) / r.eta_traditional_bpj for r in rows)
        print(f"{path}: min cooperative/traditional = {gain:.3f}")


if __name__ == "__main__":
    main()
