#!/usr/bin/env python3
"""Occupancy-uniformity sweep over the exchange parameter k.

For each k, runs replica-exchange optimizations on Ackley (d = 10) over
several seeds and reports the mean per-tag chi-square ratio against uniform
level occupancy plus a majority uniform flag (ratio < 1).
"""

import argparse

from qswarm.cli import main as cli_main


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="runs/ksweep")
    ap.add_argument("--k-list", default="0.0005,0.001,0.01,0.1,1,10")
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--objective", default="ackley")
    ap.add_argument("--d", type=int, default=10)
    args = ap.parse_args()

    raise SystemExit(cli_main([
        "sweep-k",
        "--objective", args.objective,
        "--d", str(args.d),
        "--n-particles", "20",
        "--n-replicas", "5",
        "--q-max", "3.0",
        "--exchange-interval", "1",
        "--tol", "1e-5",
        "--max-iterations", "50000",
        "--k-list", args.k_list,
        "--seeds", str(args.seeds),
        "--outdir", args.outdir,
    ]))


if __name__ == "__main__":
    main()
