"""Statistical post-processing: occupancy uniformity, diversity extremes,
and cross-run aggregation."""

import statistics
from dataclasses import dataclass

import numpy as np
from scipy import stats as sps

__all__ = ["ChiSquareReport", "chi_square_uniformity", "diversity_extremes",
           "aggregate_runs"]


@dataclass(frozen=True)
class ChiSquareReport:
    """Per-tag chi-square statistics against uniform level occupancy."""

    statistics: np.ndarray      # one value per tag
    critical_value: float       # 95th percentile of chi2 with M-1 dof
    ratios: np.ndarray          # statistic / critical value, per tag
    mean_ratio: float
    uniform: bool               # mean ratio below 1


def chi_square_uniformity(counts) -> ChiSquareReport:
    """Test each tag's level-visit counts against the uniform expectation.

    ``counts`` is a (tags x levels) matrix; every tag must have a positive
    total.  The critical value is computed from the chi-square CDF at the
    95% confidence level with (levels - 1) degrees of freedom.
    """
    counts = np.asarray(counts, dtype=float)
    if counts.ndim != 2 or counts.shape[1] < 2:
        raise ValueError("counts must be a (tags x levels) matrix with >= 2 levels")
    if np.any(counts < 0):
        raise ValueError("counts must be non-negative")
    totals = counts.sum(axis=1)
    if np.any(totals == 0):
        raise ValueError("insufficient data: a tag has no recorded visits")
    m = counts.shape[1]
    expected = totals[:, None] / m
    chi2 = np.sum((counts - expected) ** 2 / expected, axis=1)
    critical = float(sps.chi2.ppf(0.95, m - 1))
    ratios = chi2 / critical
    mean_ratio = float(ratios.mean())
    return ChiSquareReport(
        statistics=chi2,
        critical_value=critical,
        ratios=ratios,
        mean_ratio=mean_ratio,
        uniform=mean_ratio < 1.0,
    )


def diversity_extremes(traces):
    """Pointwise (highest, lowest) diversity across levels.

    ``traces`` is a sequence of M equal-length per-level time series.
    """
    arr = np.asarray(traces, dtype=float)
    if arr.ndim != 2 or arr.shape[0] < 2 or arr.shape[1] == 0:
        raise ValueError("need at least 2 non-empty traces of equal length")
    return arr.max(axis=0), arr.min(axis=0)


def aggregate_runs(results) -> list:
    """Summaries grouped by (algorithm, objective, d).

    Returns one dict per group with mean/median/min/max of
    iterations-to-convergence and of the final best score, plus the number
    of runs and how many of them converged.
    """
    results = list(results)
    if not results:
        raise ValueError("no results to aggregate")
    groups = {}
    for r in results:
        groups.setdefault((r.algorithm, r.objective, r.d), []).append(r)
    rows = []
    for (algorithm, objective, d), runs in sorted(groups.items()):
        iters = [r.iterations for r in runs]
        scores = [r.best_score for r in runs]
        rows.append({
            "algorithm": algorithm,
            "objective": objective,
            "d": d,
            "n_runs": len(runs),
            "n_converged": sum(r.converged for r in runs),
            "mean_iterations": statistics.fmean(iters),
            "median_iterations": statistics.median(iters),
            "min_iterations": min(iters),
            "max_iterations": max(iters),
            "mean_best_score": statistics.fmean(scores),
            "median_best_score": statistics.median(scores),
            "min_best_score": min(scores),
            "max_best_score": max(scores),
        })
    return rows
