"""Single-swarm quantum-behaved particle kernel with q-Gaussian displacements.

One iteration contracts every particle toward a stochastic attractor between
its personal best and the swarm's global best, displaced by the magnitude of
a q-Gaussian deviate scaled by the distance to the mean-best position.  The
update is synchronous: the mean best and global best are frozen while all
particles move, then the bookkeeping is merged.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .objective import ObjectiveHandle, clamp_to_bounds
from .sampling import RngStream, q_gaussian_from_uniform

__all__ = [
    "ScheduleParams",
    "Particle",
    "SwarmState",
    "gamma",
    "init_swarm",
    "compute_mbest",
    "local_attractor",
    "update_particle",
    "diversity",
    "swarm_step",
]


@dataclass(frozen=True)
class ScheduleParams:
    """Sinusoidal contraction-expansion schedule gamma_t = 1 + g * |A sin(w t)|."""

    g: float = 0.5
    amplitude: float = 0.5
    omega: float = 0.1

    def __post_init__(self):
        if not 1.0 + self.g * abs(self.amplitude) < 1.7:
            raise ValueError(
                "schedule violates the convergence bound: 1 + g*|A| must stay below 1.7"
            )


def gamma(t: int, p: ScheduleParams) -> float:
    """Contraction coefficient at iteration t; always in [1, 1 + g|A|] < 1.7."""
    return 1.0 + p.g * abs(p.amplitude * math.sin(p.omega * t))


@dataclass
class Particle:
    position: np.ndarray
    best_position: np.ndarray
    best_score: float


@dataclass
class SwarmState:
    """Population state for one q level.

    Positions and personal bests are stored as (N, d) arrays; the global best
    is always the minimum personal best.
    """

    positions: np.ndarray
    best_positions: np.ndarray
    best_scores: np.ndarray
    global_best_position: np.ndarray
    global_best_score: float
    q: float
    iteration: int = 0

    @property
    def n_particles(self) -> int:
        return self.positions.shape[0]

    @property
    def dimension(self) -> int:
        return self.positions.shape[1]

    def particle(self, i: int) -> Particle:
        return Particle(self.positions[i], self.best_positions[i], float(self.best_scores[i]))

    def swap_configuration(self, other: "SwarmState") -> None:
        """Exchange full particle configurations (positions, bests, scores).

        The q value and iteration counter stay attached to the level.
        """
        for name in ("positions", "best_positions", "best_scores",
                     "global_best_position", "global_best_score"):
            a, b = getattr(self, name), getattr(other, name)
            setattr(self, name, b)
            setattr(other, name, a)


def init_swarm(obj: ObjectiveHandle, n_particles: int, q: float,
               stream: RngStream) -> SwarmState:
    """Uniform positions in the search box; personal best = initial position."""
    if n_particles < 2:
        raise ValueError("a swarm needs at least 2 particles")
    b = obj.bounds
    u = stream.uniform((n_particles, obj.dimension))
    positions = b.lower + u * (b.upper - b.lower)
    scores = obj.evaluate_many(positions)
    best = int(np.argmin(scores))
    return SwarmState(
        positions=positions,
        best_positions=positions.copy(),
        best_scores=scores.copy(),
        global_best_position=positions[best].copy(),
        global_best_score=float(scores[best]),
        q=q,
    )


def compute_mbest(s: SwarmState) -> np.ndarray:
    """Mean-best position: component-wise mean of all personal bests."""
    return s.best_positions.mean(axis=0)


def local_attractor(s: SwarmState, i: int, stream: RngStream) -> np.ndarray:
    """Per-dimension uniform convex combination of personal and global best."""
    phi = stream.uniform(s.dimension)
    return phi * s.best_positions[i] + (1.0 - phi) * s.global_best_position


def displaced_position(attractor, gamma_t, mbest, position, deviates, plus_branch):
    """Raw update rule: attractor +/- gamma * |mbest - x| * |deviate|.

    ``plus_branch`` is the boolean z >= 0.5 mask choosing the sign; the
    deviate contributes only its magnitude.
    """
    step = gamma_t * np.abs(mbest - position) * np.abs(deviates)
    return attractor + np.where(plus_branch, step, -step)


def update_particle(s: SwarmState, i: int, params: ScheduleParams,
                    obj: ObjectiveHandle, stream: RngStream) -> np.ndarray:
    """Move particle i one step and refresh its personal/global bests.

    Returns the new (clamped) position.
    """
    d = s.dimension
    attractor = local_attractor(s, i, stream)
    z = stream.uniform(d)
    u1 = stream.uniform(d)
    u2 = stream.uniform(d)
    deviates = q_gaussian_from_uniform(u1, u2, s.q)
    mbest = compute_mbest(s)
    new_pos = displaced_position(attractor, gamma(s.iteration, params), mbest,
                                 s.positions[i], deviates, z >= 0.5)
    new_pos = clamp_to_bounds(new_pos, obj.bounds)
    s.positions[i] = new_pos
    score = obj.evaluate(new_pos)
    if score < s.best_scores[i]:
        s.best_scores[i] = score
        s.best_positions[i] = new_pos.copy()
        if score < s.global_best_score:
            s.global_best_score = score
            s.global_best_position = new_pos.copy()
    return new_pos


def diversity(s: SwarmState) -> float:
    """Mean Euclidean distance of personal bests from the mean-best position."""
    mbest = compute_mbest(s)
    return float(np.linalg.norm(s.best_positions - mbest, axis=1).mean())


def swarm_step(s: SwarmState, params: ScheduleParams, obj: ObjectiveHandle,
               stream: RngStream) -> SwarmState:
    """Advance the whole swarm one synchronous iteration.

    Evaluates the objective exactly once per particle and restores all
    SwarmState invariants before returning.
    """
    n, d = s.positions.shape
    mbest = compute_mbest(s)
    gamma_t = gamma(s.iteration, params)

    # one block draw per iteration: attractor weights, sign branch, two
    # uniforms feeding the q-Gaussian transform
    block = stream.uniform((4, n, d))
    phi, z, u1, u2 = block
    attractor = phi * s.best_positions + (1.0 - phi) * s.global_best_position
    deviates = q_gaussian_from_uniform(u1, u2, s.q)
    new_pos = displaced_position(attractor, gamma_t, mbest, s.positions,
                                 deviates, z >= 0.5)
    new_pos = clamp_to_bounds(new_pos, obj.bounds)
    scores = obj.evaluate_many(new_pos)

    s.positions = new_pos
    improved = scores < s.best_scores
    s.best_scores = np.where(improved, scores, s.best_scores)
    s.best_positions = np.where(improved[:, None], new_pos, s.best_positions)
    best = int(np.argmin(s.best_scores))
    if s.best_scores[best] < s.global_best_score:
        s.global_best_score = float(s.best_scores[best])
        s.global_best_position = s.best_positions[best].copy()
    s.iteration += 1
    return s
