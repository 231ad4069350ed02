"""Objective-function abstraction: search bounds, evaluation and accounting."""

import threading
from dataclasses import dataclass, field

import numpy as np

__all__ = ["Bounds", "ObjectiveHandle", "clamp_to_bounds", "make_objective", "OBJECTIVE_NAMES"]


@dataclass(frozen=True)
class Bounds:
    """Per-coordinate box constraints, lower[j] < upper[j]."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.atleast_1d(np.asarray(self.lower, dtype=float))
        upper = np.atleast_1d(np.asarray(self.upper, dtype=float))
        if lower.shape != upper.shape or lower.ndim != 1:
            raise ValueError("lower and upper must be 1-D vectors of equal length")
        if not np.all(lower < upper):
            raise ValueError("every lower bound must be strictly below its upper bound")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def dimension(self) -> int:
        return self.lower.shape[0]

    @classmethod
    def cube(cls, low: float, high: float, d: int) -> "Bounds":
        return cls(np.full(d, low), np.full(d, high))


def clamp_to_bounds(x, b: Bounds):
    """Project each coordinate into [lower, upper]; in-bounds input is unchanged."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != b.dimension:
        raise ValueError(f"expected vectors of length {b.dimension}, got {x.shape[-1]}")
    return np.clip(x, b.lower, b.upper)


class ObjectiveHandle:
    """A scoring function plus its search box and evaluation counter.

    The wrapped function must accept both a single vector (shape (d,)) and a
    batch of vectors (shape (m, d), reduced over the last axis).  eval_count
    advances by exactly one per scored vector; increments are lock-protected
    so concurrent replica workers keep the total exact.
    """

    def __init__(self, name, dimension, bounds, fn, known_optimum=None):
        if dimension < 1:
            raise ValueError("dimension must be positive")
        if bounds.dimension != dimension:
            raise ValueError("bounds dimension does not match objective dimension")
        self.name = name
        self.dimension = int(dimension)
        self.bounds = bounds
        self.known_optimum = known_optimum
        self.eval_count = 0
        self._fn = fn
        self._lock = threading.Lock()

    def evaluate(self, x) -> float:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dimension,):
            raise ValueError(
                f"objective '{self.name}' expects a vector of length {self.dimension}, "
                f"got shape {x.shape}"
            )
        with self._lock:
            self.eval_count += 1
        return float(self._fn(x))

    def evaluate_many(self, xs) -> np.ndarray:
        """Score a batch of row vectors; counts one evaluation per row."""
        xs = np.asarray(xs, dtype=float)
        if xs.ndim != 2 or xs.shape[1] != self.dimension:
            raise ValueError(
                f"objective '{self.name}' expects an (m, {self.dimension}) batch, "
                f"got shape {xs.shape}"
            )
        with self._lock:
            self.eval_count += xs.shape[0]
        return np.asarray(self._fn(xs), dtype=float)


OBJECTIVE_NAMES = ("ackley", "griewank", "rastrigin", "go12")


def make_objective(name: str, d: int | None = None, literature_forms: bool = False,
                   **go_kwargs) -> ObjectiveHandle:
    """Build a named objective: one of the benchmark functions or the Go 12-mer."""
    from . import benchmarks, gomodel

    if name in ("ackley", "griewank", "rastrigin"):
        if d is None:
            raise ValueError(f"objective '{name}' requires a dimension")
        return benchmarks.make_benchmark(name, d, literature_forms=literature_forms)
    if name == "go12":
        if d is not None and d != 36:
            raise ValueError("go12 is fixed at d = 3 x 12 = 36")
        return gomodel.make_go_objective(n_residues=12, **go_kwargs)
    raise ValueError(f"unknown objective '{name}'; choose from {OBJECTIVE_NAMES}")
