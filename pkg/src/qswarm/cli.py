"""Command-line experiment harness.

Subcommands:
  run      one optimization run (rex or a fixed-q swarm), artifacts on disk
  sweep-k  occupancy-uniformity sweep over the temperature-like parameter k
  compare  dimension sweep comparing rex against the fixed-q swarm tiers
  fold     Go 12-mer folding run with energy/rmsd and diversity traces

Every run directory contains a config echo (config + seed + version) that is
sufficient to reproduce the run byte-for-byte.
"""

import argparse
import csv
import dataclasses
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import aggregate_runs, chi_square_uniformity
from .config import DEFAULT_AMPLITUDES, DEFAULT_Q_SET, RunConfig, config_from_mapping, parse_config_file
from .gomodel import rmsd as go_rmsd
from .objective import make_objective
from .replica import RunResult, run_rex, run_single

__all__ = ["main", "cmd_run", "cmd_sweep_k", "cmd_compare", "cmd_fold",
           "execute_run", "write_run_artifacts"]


def _fmt(value) -> str:
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value))
    return str(value)


def _write_csv(path: Path, header, rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def execute_run(config: RunConfig, objective=None, on_iteration=None) -> RunResult:
    if config.algorithm == "rex":
        return run_rex(config, objective=objective, on_iteration=on_iteration)
    return run_single(config, objective=objective)


def write_run_artifacts(config: RunConfig, result: RunResult, outdir) -> Path:
    """Write the standard artifact set for one run; returns the directory."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    echo_lines = [f"{key} = {_fmt(value)}"
                  for key, value in sorted(dataclasses.asdict(config).items())]
    echo_lines.append(f"version = qswarm {__version__}")
    m = config.n_replicas if config.algorithm == "rex" else 1
    echo_lines.append(
        f"rng = philox(seed={config.seed}); streams 0..{m - 1} per replica, "
        f"stream {m} exchange controller"
    )
    (outdir / "config_echo.txt").write_text("\n".join(echo_lines) + "\n", encoding="utf-8")

    _write_csv(outdir / "summary.csv",
               ["algorithm", "objective", "d", "seed", "n_particles", "n_replicas",
                "k", "q_max", "exchange_interval", "tol", "max_iterations",
                "iterations", "converged", "best_score", "eval_count"],
               [[result.algorithm, result.objective, result.d, result.seed,
                 config.n_particles, config.n_replicas, config.k, config.q_max,
                 config.exchange_interval, config.tol, config.max_iterations,
                 result.iterations, result.converged, result.best_score,
                 result.eval_count]])

    for level, q in enumerate(result.q_levels):
        rows = [
            [t + 1, result.score_traces[level][t], result.diversity_traces[level][t],
             result.gamma_trace[t]]
            for t in range(len(result.gamma_trace))
        ]
        _write_csv(outdir / f"trace_level{level}.csv",
                   ["iteration", "global_best_score", "diversity", "gamma"], rows)

    if result.occupancy is not None:
        m = result.occupancy.shape[0]
        _write_csv(outdir / "occupancy.csv",
                   ["tag"] + [f"level_{i}" for i in range(m)],
                   [[tag] + list(result.occupancy[tag]) for tag in range(m)])
        _write_csv(outdir / "exchange.csv",
                   ["pair_low", "pair_high", "attempts", "accepts", "acceptance_rate"],
                   [[i, i + 1, int(result.exchange_attempts[i]), int(result.exchange_accepts[i]),
                     (int(result.exchange_accepts[i]) / int(result.exchange_attempts[i])
                      if result.exchange_attempts[i] else 0.0)]
                    for i in range(m - 1)])
        _write_csv(outdir / "roundtrip.csv",
                   ["tag", "completed_trips", "mean_sweeps"],
                   [[tag, count, mean if mean is not None else ""]
                    for tag, (count, mean) in sorted(result.round_trips.items())])
    return outdir


def _build_config(args) -> RunConfig:
    mapping = {}
    if args.config:
        mapping.update(parse_config_file(args.config))
    for key in ("objective", "d", "algorithm", "n_particles", "n_replicas", "q",
                "q_max", "k", "g", "omega", "amplitude", "exchange_interval",
                "tol", "max_iterations", "seed", "literature_forms", "outdir"):
        value = getattr(args, key, None)
        if value is not None:
            mapping[key] = value
    return config_from_mapping(mapping)


def cmd_run(args) -> int:
    config = _build_config(args)
    result = execute_run(config)
    outdir = write_run_artifacts(config, result, Path(config.outdir) / "run")
    print(f"run finished: iterations={result.iterations} converged={result.converged} "
          f"best_score={result.best_score!r} -> {outdir}")
    return 0


def sweep_k_rows(config: RunConfig, k_values, n_seeds: int) -> list:
    """One row per k: mean chi-square ratio over seeds and a majority
    uniform flag, from per-iteration occupancy of rex runs."""
    if not k_values:
        raise ValueError("k list must not be empty")
    rows = []
    for k in k_values:
        ratios, flags = [], []
        for offset in range(n_seeds):
            cfg = config.with_overrides(k=float(k), seed=config.seed + offset)
            result = run_rex(cfg)
            report = chi_square_uniformity(result.occupancy)
            ratios.append(report.mean_ratio)
            flags.append(report.uniform)
        rows.append([k, config.objective, config.d,
                     float(np.mean(ratios)), sum(flags) > n_seeds / 2])
    return rows


def cmd_sweep_k(args) -> int:
    config = _build_config(args)
    if config.algorithm != "rex":
        raise ValueError("sweep-k requires the rex algorithm")
    k_values = [float(v) for v in args.k_list.split(",") if v.strip()]
    rows = sweep_k_rows(config, k_values, args.seeds)
    outdir = Path(config.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    _write_csv(outdir / "ksweep.csv",
               ["k", "objective", "d", "mean_ratio", "uniform"], rows)
    print(f"k sweep finished: {len(rows)} rows -> {outdir / 'ksweep.csv'}")
    return 0


def compare_rows(config: RunConfig, dims, n_seeds: int, q_set=DEFAULT_Q_SET,
                 amplitudes=DEFAULT_AMPLITUDES) -> list:
    """Aggregate rows for rex vs the fixed-q tiers across dimensions.

    Fixed-q tiers are averaged over the amplitude sweep and seeds; budget
    exhaustion is recorded as a non-converged run, never dropped.
    """
    results = []
    for d in dims:
        for seed in range(config.seed, config.seed + n_seeds):
            rex_cfg = config.with_overrides(algorithm="rex", d=int(d), seed=seed)
            results.append(run_rex(rex_cfg))
        for amplitude in amplitudes:
            for seed in range(config.seed, config.seed + n_seeds):
                base = config.with_overrides(
                    algorithm="gsqpo", n_replicas=1, q=1.0, d=int(d),
                    amplitude=float(amplitude), seed=seed)
                results.append(run_single(base))
                for q in q_set:
                    cfg = base.with_overrides(algorithm="qgsqpo", q=float(q))
                    r = run_single(cfg)
                    r.algorithm = f"qgsqpo[q={q}]"
                    results.append(r)
    rows = aggregate_runs(results)
    header = ["algorithm", "objective", "d", "n_runs", "n_converged",
              "mean_iterations", "median_iterations", "mean_best_score",
              "median_best_score"]
    return header, [[row[key] for key in header] for row in rows]


def cmd_compare(args) -> int:
    config = _build_config(args)
    dims = [int(v) for v in args.dims.split(",") if v.strip()]
    if not dims:
        raise ValueError("dimension list must not be empty")
    q_set = ([float(v) for v in args.q_set.split(",")] if args.q_set else DEFAULT_Q_SET)
    amplitudes = ([float(v) for v in args.amplitudes.split(",")] if args.amplitudes
                  else DEFAULT_AMPLITUDES)
    header, rows = compare_rows(config, dims, args.seeds, q_set, amplitudes)
    outdir = Path(config.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    _write_csv(outdir / "compare.csv", header, rows)
    print(f"comparison finished: {len(rows)} rows -> {outdir / 'compare.csv'}")
    return 0


def fold_run(config: RunConfig):
    """Go folding run; returns (result, scatter rows, diversity rows).

    Scatter rows are (iteration, q, best energy, rmsd-to-native) per level;
    diversity rows carry the per-iteration extremes and the q values of the
    levels attaining them.
    """
    objective = make_objective("go12")
    native_flat = objective.topology.native_coords.reshape(-1)
    scatter, diversity_rows = [], []

    def on_iteration(rs, t):
        divs = []
        for level, swarm in enumerate(rs.swarms):
            q = float(rs.ladder.qs[level])
            energy = swarm.global_best_score
            dev = go_rmsd(swarm.global_best_position, native_flat)
            scatter.append([t, q, energy, dev])
            from .swarm import diversity as swarm_diversity
            divs.append(swarm_diversity(swarm))
        hi, lo = int(np.argmax(divs)), int(np.argmin(divs))
        diversity_rows.append([t, divs[hi], divs[lo],
                               float(rs.ladder.qs[hi]), float(rs.ladder.qs[lo])])

    result = run_rex(config, objective=objective, on_iteration=on_iteration)
    return result, scatter, diversity_rows


def cmd_fold(args) -> int:
    config = _build_config(args)
    overrides = {"objective": "go12", "d": 36, "algorithm": "rex"}
    if args.n_replicas is None:
        overrides["n_replicas"] = 6
    if args.exchange_interval is None:
        overrides["exchange_interval"] = 10
    if args.tol is None:
        # raw Go energies drop below any small positive tolerance immediately;
        # fold runs are budget-limited unless a tolerance is given explicitly
        overrides["tol"] = float("-inf")
    config = config.with_overrides(**overrides)
    result, scatter, diversity_rows = fold_run(config)
    outdir = write_run_artifacts(config, result, Path(config.outdir) / "fold")
    _write_csv(outdir / "scatter.csv",
               ["iteration", "q", "best_energy", "rmsd"], scatter)
    _write_csv(outdir / "diversity_extremes.csv",
               ["iteration", "highest", "lowest", "q_highest", "q_lowest"],
               diversity_rows)
    print(f"fold finished: d={result.d} iterations={result.iterations} "
          f"best_energy={result.best_score!r} -> {outdir}")
    return 0


def _add_config_options(parser):
    parser.add_argument("--config", help="flat key = value configuration file")
    parser.add_argument("--objective", choices=["ackley", "griewank", "rastrigin", "go12"])
    parser.add_argument("--d", type=int)
    parser.add_argument("--algorithm", choices=["gsqpo", "qgsqpo", "rex"])
    parser.add_argument("--n-particles", dest="n_particles", type=int)
    parser.add_argument("--n-replicas", dest="n_replicas", type=int)
    parser.add_argument("--q", type=float)
    parser.add_argument("--q-max", dest="q_max", type=float)
    parser.add_argument("--k", type=float)
    parser.add_argument("--g", type=float)
    parser.add_argument("--omega", type=float)
    parser.add_argument("--amplitude", type=float)
    parser.add_argument("--exchange-interval", dest="exchange_interval", type=int)
    parser.add_argument("--tol", type=float)
    parser.add_argument("--max-iterations", dest="max_iterations", type=int)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--literature-forms", dest="literature_forms",
                        action="store_const", const=True)
    parser.add_argument("--outdir")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qswarm", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute one optimization run")
    _add_config_options(p_run)
    p_run.set_defaults(func=cmd_run)

    p_sweep = sub.add_parser("sweep-k", help="chi-square occupancy sweep over k")
    _add_config_options(p_sweep)
    p_sweep.add_argument("--k-list", required=True,
                         help="comma-separated k values")
    p_sweep.add_argument("--seeds", type=int, default=1)
    p_sweep.set_defaults(func=cmd_sweep_k)

    p_cmp = sub.add_parser("compare", help="dimension sweep: rex vs fixed-q tiers")
    _add_config_options(p_cmp)
    p_cmp.add_argument("--dims", required=True, help="comma-separated dimensions")
    p_cmp.add_argument("--seeds", type=int, default=1)
    p_cmp.add_argument("--q-set", dest="q_set")
    p_cmp.add_argument("--amplitudes")
    p_cmp.set_defaults(func=cmd_compare)

    p_fold = sub.add_parser("fold", help="Go 12-mer folding run")
    _add_config_options(p_fold)
    p_fold.set_defaults(func=cmd_fold)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
