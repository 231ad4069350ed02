"""Replica-exchange controller over a geometric q ladder.

M swarms run at geometrically spaced q values between 1 and q_max.  At
regular iteration intervals, one randomly chosen pair of neighboring levels
attempts a Metropolis swap of full particle configurations; acceptance uses
the level weights alpha_i = 1/(k q_i) and the per-swarm energies (minimum
personal-best score) so that detailed balance holds.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .config import RunConfig
from .objective import ObjectiveHandle, make_objective
from .sampling import RngStream
from .swarm import ScheduleParams, SwarmState, diversity, gamma, init_swarm, swarm_step

__all__ = [
    "QLadder",
    "build_ladder",
    "ExchangeDecision",
    "ReplicaSet",
    "replica_energy",
    "acceptance_probability",
    "attempt_exchange",
    "exchange_sweep",
    "round_trip_stats",
    "RunResult",
    "run_rex",
    "run_single",
]


@dataclass(frozen=True)
class QLadder:
    """Geometric ladder of (q_i, alpha_i) levels, q_1 = 1, alpha_i = 1/(k q_i)."""

    qs: np.ndarray
    alphas: np.ndarray
    k: float

    @property
    def n_levels(self) -> int:
        return self.qs.shape[0]


def build_ladder(m: int, q_max: float, k: float) -> QLadder:
    """q_i = q_max^((i-1)/M) for i = 1..M: geometric in [1, q_max)."""
    if m < 2:
        raise ValueError("a ladder needs at least 2 levels")
    if q_max <= 1.0:
        raise ValueError("q_max must exceed 1")
    if k <= 0.0:
        raise ValueError("k must be positive")
    qs = q_max ** (np.arange(m, dtype=float) / m)
    return QLadder(qs=qs, alphas=1.0 / (k * qs), k=k)


def replica_energy(s: SwarmState) -> float:
    """Swap energy of a swarm: the minimum personal-best score."""
    return float(s.global_best_score)


def acceptance_probability(alpha_i: float, alpha_j: float,
                           e_i: float, e_j: float) -> float:
    """Metropolis swap probability min{1, exp(-(alpha_i - alpha_j)(E_j - E_i))}."""
    delta = (alpha_i - alpha_j) * (e_j - e_i)
    if delta <= 0.0:
        return 1.0
    if delta > 745.0:  # exp underflows to 0 anyway
        return 0.0
    return math.exp(-delta)


@dataclass(frozen=True)
class ExchangeDecision:
    pair: tuple
    delta: float
    acceptance_prob: float
    accepted: bool


@dataclass
class _TripState:
    # round-trip bookkeeping for one replica tag
    origin: int | None = None      # extreme level where the current trip began
    origin_sweep: int = 0
    reached_far: bool = False


class ReplicaSet:
    """M swarms on a q ladder plus occupancy, exchange and round-trip counters.

    ``tags[level]`` names the original replica currently occupying that
    level; tags always form a permutation of 0..M-1.
    """

    def __init__(self, ladder: QLadder, swarms: list):
        if len(swarms) != ladder.n_levels:
            raise ValueError("one swarm per ladder level required")
        m = ladder.n_levels
        self.ladder = ladder
        self.swarms = list(swarms)
        self.tags = np.arange(m)
        self.visit_counts = np.zeros((m, m), dtype=np.int64)  # tag x level
        self.attempts = np.zeros(m - 1, dtype=np.int64)
        self.accepts = np.zeros(m - 1, dtype=np.int64)
        self.round_trip_log = {tag: [] for tag in range(m)}
        self.sweep_count = 0
        self._trips = {tag: _TripState() for tag in range(m)}
        self._touch_extremes()

    @property
    def n_levels(self) -> int:
        return self.ladder.n_levels

    def min_energy(self) -> float:
        return min(replica_energy(s) for s in self.swarms)

    def record_occupancy(self) -> None:
        """One visit per tag at its current level (sampled once per iteration)."""
        for level in range(self.n_levels):
            self.visit_counts[self.tags[level], level] += 1

    def _touch_extremes(self) -> None:
        m = self.n_levels
        for level in (0, m - 1):
            tag = int(self.tags[level])
            trip = self._trips[tag]
            if trip.origin is None:
                trip.origin = level
                trip.origin_sweep = self.sweep_count
                trip.reached_far = False
            elif level == trip.origin:
                if trip.reached_far:
                    self.round_trip_log[tag].append(self.sweep_count - trip.origin_sweep)
                    trip.origin_sweep = self.sweep_count
                    trip.reached_far = False
            else:
                trip.reached_far = True


def attempt_exchange(rs: ReplicaSet, i: int, stream: RngStream) -> ExchangeDecision:
    """Attempt a Metropolis swap between neighbor levels (i, i+1).

    On acceptance the full particle configurations and the identity tags are
    exchanged; energies travel with the configurations and are not
    re-evaluated.
    """
    if not 0 <= i < rs.n_levels - 1:
        raise ValueError(f"pair index {i} out of range for {rs.n_levels} levels")
    j = i + 1
    alpha_i, alpha_j = rs.ladder.alphas[i], rs.ladder.alphas[j]
    e_i, e_j = replica_energy(rs.swarms[i]), replica_energy(rs.swarms[j])
    delta = (alpha_i - alpha_j) * (e_j - e_i)
    p_acc = acceptance_probability(alpha_i, alpha_j, e_i, e_j)
    accepted = bool(stream.uniform() < p_acc)
    rs.attempts[i] += 1
    if accepted:
        rs.accepts[i] += 1
        rs.swarms[i].swap_configuration(rs.swarms[j])
        rs.tags[[i, j]] = rs.tags[[j, i]]
    return ExchangeDecision(pair=(i, j), delta=float(delta),
                            acceptance_prob=p_acc, accepted=accepted)


def exchange_sweep(rs: ReplicaSet, stream: RngStream) -> list:
    """One sweep: attempt a swap on one uniformly chosen neighbor pair."""
    i = stream.choice_index(rs.n_levels - 1)
    decision = attempt_exchange(rs, i, stream)
    rs.sweep_count += 1
    rs._touch_extremes()
    return [decision]


def round_trip_stats(rs: ReplicaSet) -> dict:
    """Per tag: (completed round-trip count, mean duration in sweeps or None)."""
    out = {}
    for tag, log in rs.round_trip_log.items():
        out[tag] = (len(log), (sum(log) / len(log)) if log else None)
    return out


@dataclass
class RunResult:
    """Everything a finished run reports; traces are per-level time series."""

    algorithm: str
    objective: str
    d: int
    q_levels: list
    seed: int
    iterations: int
    converged: bool
    best_score: float
    best_position: np.ndarray
    eval_count: int
    score_traces: list          # per level: list of global best scores
    diversity_traces: list      # per level: list of diversity values
    gamma_trace: list           # shared schedule values, one per iteration
    occupancy: np.ndarray | None = None
    exchange_attempts: np.ndarray | None = None
    exchange_accepts: np.ndarray | None = None
    round_trips: dict | None = None

    @property
    def gap(self) -> float:
        return self.best_score


def _convergence_gap(score: float, obj: ObjectiveHandle) -> float:
    if obj.known_optimum is not None:
        return score - obj.known_optimum
    return score


def run_rex(config: RunConfig, objective: ObjectiveHandle | None = None,
            on_iteration=None) -> RunResult:
    """Run the replica-exchange optimizer to convergence or budget exhaustion.

    Stops as soon as the smallest per-level energy falls below ``tol``
    (measured against the objective's known optimum when one is set).
    ``on_iteration(rs, t)``, when given, is called after every iteration.
    """
    if config.algorithm != "rex":
        raise ValueError("run_rex requires a rex configuration")
    obj = objective or make_objective(config.objective, config.d,
                                      literature_forms=config.literature_forms)
    m = config.n_replicas
    ladder = build_ladder(m, config.q_max, config.k)
    params = ScheduleParams(g=config.g, amplitude=config.amplitude, omega=config.omega)
    streams = [RngStream(config.seed, r) for r in range(m)]
    controller = RngStream(config.seed, m)
    swarms = [init_swarm(obj, config.n_particles, float(ladder.qs[r]), streams[r])
              for r in range(m)]
    rs = ReplicaSet(ladder, swarms)

    score_traces = [[] for _ in range(m)]
    diversity_traces = [[] for _ in range(m)]
    gamma_trace = []

    converged = _convergence_gap(rs.min_energy(), obj) < config.tol
    iterations = 0
    if not converged:
        for t in range(1, config.max_iterations + 1):
            gamma_t = gamma(t - 1, params)
            for level in range(m):
                swarm_step(rs.swarms[level], params, obj, streams[level])
            rs.record_occupancy()
            gamma_trace.append(gamma_t)
            for level in range(m):
                score_traces[level].append(rs.swarms[level].global_best_score)
                diversity_traces[level].append(diversity(rs.swarms[level]))
            if t % config.exchange_interval == 0:
                exchange_sweep(rs, controller)
            if on_iteration is not None:
                on_iteration(rs, t)
            iterations = t
            if _convergence_gap(rs.min_energy(), obj) < config.tol:
                converged = True
                break

    best_level = int(np.argmin([replica_energy(s) for s in rs.swarms]))
    best_swarm = rs.swarms[best_level]
    return RunResult(
        algorithm="rex",
        objective=config.objective,
        d=obj.dimension,
        q_levels=[float(q) for q in ladder.qs],
        seed=config.seed,
        iterations=iterations,
        converged=converged,
        best_score=float(best_swarm.global_best_score),
        best_position=best_swarm.global_best_position.copy(),
        eval_count=obj.eval_count,
        score_traces=score_traces,
        diversity_traces=diversity_traces,
        gamma_trace=gamma_trace,
        occupancy=rs.visit_counts.copy(),
        exchange_attempts=rs.attempts.copy(),
        exchange_accepts=rs.accepts.copy(),
        round_trips=round_trip_stats(rs),
    )


def run_single(config: RunConfig, objective: ObjectiveHandle | None = None) -> RunResult:
    """Run one fixed-q swarm (Gaussian for q = 1) under the same stop rule."""
    if config.algorithm not in ("gsqpo", "qgsqpo"):
        raise ValueError("run_single requires a gsqpo or qgsqpo configuration")
    obj = objective or make_objective(config.objective, config.d,
                                      literature_forms=config.literature_forms)
    params = ScheduleParams(g=config.g, amplitude=config.amplitude, omega=config.omega)
    stream = RngStream(config.seed, 0)
    s = init_swarm(obj, config.n_particles, config.q, stream)

    score_trace, diversity_trace, gamma_trace = [], [], []
    converged = _convergence_gap(s.global_best_score, obj) < config.tol
    iterations = 0
    if not converged:
        for t in range(1, config.max_iterations + 1):
            gamma_trace.append(gamma(t - 1, params))
            swarm_step(s, params, obj, stream)
            score_trace.append(s.global_best_score)
            diversity_trace.append(diversity(s))
            iterations = t
            if _convergence_gap(s.global_best_score, obj) < config.tol:
                converged = True
                break

    return RunResult(
        algorithm=config.algorithm,
        objective=config.objective,
        d=obj.dimension,
        q_levels=[config.q],
        seed=config.seed,
        iterations=iterations,
        converged=converged,
        best_score=float(s.global_best_score),
        best_position=s.global_best_position.copy(),
        eval_count=obj.eval_count,
        score_traces=[score_trace],
        diversity_traces=[diversity_trace],
        gamma_trace=gamma_trace,
    )
