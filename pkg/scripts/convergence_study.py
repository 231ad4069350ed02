#!/usr/bin/env python3
"""Benchmark convergence study: replica exchange vs every fixed-q tier.

Replays the full comparison protocol (d = 10, N = 20, M = 5, q_max = 3,
k = 0.0005, exchange every iteration, tolerance 1e-5) over 10 seeds for each
benchmark objective and writes one compare.csv per objective.

Roughly 20 minutes of CPU at the default settings.
"""

import argparse
from pathlib import Path

from qswarm.cli import main as cli_main


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="runs/convergence")
    ap.add_argument("--dims", default="10")
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--objectives", default="ackley,griewank,rastrigin")
    args = ap.parse_args()

    for objective in args.objectives.split(","):
        outdir = Path(args.outdir) / objective
        rc = cli_main([
            "compare",
            "--objective", objective,
            "--dims", args.dims,
            "--seeds", str(args.seeds),
            "--n-particles", "20",
            "--n-replicas", "5",
            "--q-max", "3.0",
            "--k", "0.0005",
            "--exchange-interval", "1",
            "--tol", "1e-5",
            "--max-iterations", "50000",
            "--outdir", str(outdir),
        ])
        if rc != 0:
            raise SystemExit(rc)


if __name__ == "__main__":
    main()
