"""Multimodal benchmark objectives: Griewank, Rastrigin and Ackley.

The default forms follow the printed definitions used throughout this
project: Griewank carries a 1/400 quadratic prefactor and Rastrigin a
cos(pi * x) oscillation.  The more common literature variants (1/4000 and
cos(2 pi x)) are available behind the ``literature_forms`` switch.
"""

import numpy as np

from .objective import Bounds, ObjectiveHandle

__all__ = ["griewank", "rastrigin", "ackley", "make_benchmark", "BENCHMARK_BOUNDS"]


def griewank(x, literature_forms: bool = False):
    x = np.asarray(x, dtype=float)
    prefactor = 1.0 / 4000.0 if literature_forms else 1.0 / 400.0
    idx = np.sqrt(np.arange(1, x.shape[-1] + 1, dtype=float))
    return prefactor * np.sum(x ** 2, axis=-1) - np.prod(np.cos(x / idx), axis=-1) + 1.0


def rastrigin(x, literature_forms: bool = False):
    x = np.asarray(x, dtype=float)
    omega = 2.0 * np.pi if literature_forms else np.pi
    return np.sum(10.0 + x ** 2 - 10.0 * np.cos(omega * x), axis=-1)


def ackley(x):
    x = np.asarray(x, dtype=float)
    return (
        -20.0 * np.exp(-0.2 * np.sqrt(np.mean(x ** 2, axis=-1)))
        - np.exp(np.mean(np.cos(2.0 * np.pi * x), axis=-1))
        + 20.0
        + np.e
    )


# search boxes per function (same box in every coordinate)
BENCHMARK_BOUNDS = {
    "griewank": (-6.0 * np.pi, 6.0 * np.pi),
    "rastrigin": (-np.pi / 2.0, np.pi / 2.0),
    "ackley": (-6.0 * np.pi, 6.0 * np.pi),
}

_FUNCTIONS = {"griewank": griewank, "rastrigin": rastrigin, "ackley": ackley}


def make_benchmark(name: str, d: int, literature_forms: bool = False) -> ObjectiveHandle:
    """Wrap a benchmark function in an ObjectiveHandle with its stated box."""
    if name not in _FUNCTIONS:
        raise ValueError(f"unknown benchmark '{name}'")
    low, high = BENCHMARK_BOUNDS[name]
    fn = _FUNCTIONS[name]
    if name == "ackley":
        wrapped = fn
    else:
        def wrapped(x, _fn=fn):
            return _fn(x, literature_forms=literature_forms)
    return ObjectiveHandle(
        name=name,
        dimension=d,
        bounds=Bounds.cube(low, high, d),
        fn=wrapped,
        known_optimum=0.0,
    )
