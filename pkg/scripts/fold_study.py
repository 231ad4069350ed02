#!/usr/bin/env python3
"""Go 12-mer folding study: replica-exchange runs over several seeds.

Each run uses the fold defaults (M = 6 levels, exchange every 10 iterations,
d = 36, budget-limited) and leaves per-level (energy, rmsd) scatter data and
diversity-extreme traces in its run directory.  About 3-4 minutes per seed.
"""

import argparse
from pathlib import Path

from qswarm.cli import main as cli_main


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="runs/fold")
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--max-iterations", type=int, default=30_000)
    args = ap.parse_args()

    for seed in range(args.seeds):
        rc = cli_main([
            "fold",
            "--seed", str(seed),
            "--max-iterations", str(args.max_iterations),
            "--outdir", str(Path(args.outdir) / f"seed{seed}"),
        ])
        if rc != 0:
            raise SystemExit(rc)


if __name__ == "__main__":
    main()
