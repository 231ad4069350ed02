"""Replica-exchange q-Gaussian quantum-behaved particle swarm optimization.

A derivative-free global optimizer: quantum-behaved swarms whose stochastic
displacements follow Gaussian (q = 1) or heavy-tailed q-Gaussian (q > 1)
deviates, coupled through a parallel-tempering-style exchange of particle
configurations across a geometric q ladder.
"""

__version__ = "0.1.0"

from .analysis import aggregate_runs, chi_square_uniformity, diversity_extremes
from .benchmarks import ackley, griewank, make_benchmark, rastrigin
from .config import RunConfig
from .gomodel import (build_native_helix, extract_topology, go_energy,
                      init_box_conformations, make_go_objective, rmsd)
from .objective import Bounds, ObjectiveHandle, clamp_to_bounds, make_objective
from .replica import (QLadder, ReplicaSet, RunResult, acceptance_probability,
                      attempt_exchange, build_ladder, exchange_sweep,
                      replica_energy, round_trip_stats, run_rex, run_single)
from .sampling import RngStream, ln_q, sample_q_gaussian
from .swarm import (ScheduleParams, SwarmState, compute_mbest, diversity,
                    gamma, init_swarm, local_attractor, swarm_step,
                    update_particle)
