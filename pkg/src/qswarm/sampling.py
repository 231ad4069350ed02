"""Random deviate streams: uniform, Gaussian and heavy-tailed q-Gaussian draws.

All stochastic kernels in the package pull their randomness from RngStream
objects so that a run is fully determined by (seed, stream layout).
"""

import numpy as np

__all__ = ["RngStream", "ln_q", "sample_q_gaussian", "q_gaussian_from_uniform"]

_MASK64 = (1 << 64) - 1


class RngStream:
    """A counter-based uniform stream.

    Backed by numpy's Philox generator keyed with (seed, stream_id), so the
    same pair always replays the identical sequence and distinct stream_ids
    give statistically independent sequences.
    """

    def __init__(self, seed: int, stream_id: int = 0):
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        key = ((self.seed & _MASK64) << 64) | (self.stream_id & _MASK64)
        self._gen = np.random.Generator(np.random.Philox(key=key))

    def uniform(self, size=None):
        """Uniform deviate(s) in [0, 1); advances the stream."""
        return self._gen.random(size)

    def choice_index(self, n: int) -> int:
        """Index uniform on {0, ..., n-1}, derived from one uniform draw."""
        return min(int(self.uniform() * n), n - 1)

    def __repr__(self):
        return f"RngStream(seed={self.seed}, stream_id={self.stream_id})"


def ln_q(x, q: float):
    """Tsallis q-logarithm: (x^(1-q) - 1)/(1-q), natural log in the q -> 1 limit.

    Accepts scalars or arrays; every element must be positive.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0.0):
        raise ValueError("ln_q requires x > 0")
    if q == 1.0:
        out = np.log(x)
    else:
        out = (x ** (1.0 - q) - 1.0) / (1.0 - q)
    return out if out.ndim else float(out)


def _dual_q(q: float) -> float:
    # exponent index used inside the generalized Box-Muller transform
    return (1.0 + q) / (3.0 - q)


def q_gaussian_from_uniform(u1, u2, q: float):
    """Map two uniform deviates to one q-Gaussian deviate.

    Generalized Box-Muller: sqrt(-2 ln_{q'}(u1)) * cos(2 pi u2) with
    q' = (1+q)/(3-q).  For q = 1 this is exactly the classical Box-Muller
    transform, so a q = 1 stream is bit-identical to a direct Gaussian draw
    from the same uniforms.
    """
    if not 1.0 <= q < 3.0:
        raise ValueError(f"q must lie in [1, 3), got {q}")
    return np.sqrt(-2.0 * ln_q(u1, _dual_q(q))) * np.cos(2.0 * np.pi * np.asarray(u2))


def sample_q_gaussian(stream: RngStream, q: float, size=None):
    """Draw q-Gaussian deviate(s): Gaussian for q = 1, heavy-tailed for q > 1."""
    u1 = stream.uniform(size)
    u2 = stream.uniform(size)
    return q_gaussian_from_uniform(u1, u2, q)
