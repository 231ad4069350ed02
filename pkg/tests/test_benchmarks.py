"""Benchmark function values against hand-derived scalars and invariances."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from qswarm.benchmarks import (BENCHMARK_BOUNDS, ackley, griewank,
                               make_benchmark, rastrigin)

# hand-derived point values, recomputed here with the math module only
GRIEWANK_2PI_1D = math.pi ** 2 / 100.0  # (1/400)(2pi)^2 - cos(2pi) + 1
RASTRIGIN_ONE_1D = 21.0                 # 10 + 1 - 10 cos(pi)
ACKLEY_HALF_1D = (20.0 - 20.0 * math.exp(-0.1)) + (math.e - math.exp(math.cos(math.pi)))


class TestPointValues:
    def test_zero_vector_is_zero(self):
        for fn in (griewank, rastrigin, ackley):
            for d in (1, 5, 10, 20, 50):
                assert fn(np.zeros(d)) == pytest.approx(0.0, abs=1e-12)

    def test_griewank_at_two_pi(self):
        assert griewank(np.array([2.0 * math.pi])) == pytest.approx(
            GRIEWANK_2PI_1D, abs=1e-12)

    def test_griewank_second_coordinate_weight(self):
        # cos(x2 / sqrt(2)) hits 1 at x2 = 2 pi sqrt(2)
        x = np.array([0.0, 2.0 * math.pi * math.sqrt(2.0)])
        assert griewank(x) == pytest.approx(math.pi ** 2 / 50.0, abs=1e-12)

    def test_rastrigin_at_one(self):
        assert rastrigin(np.array([1.0])) == pytest.approx(RASTRIGIN_ONE_1D, abs=1e-12)

    def test_ackley_at_half(self):
        assert ackley(np.array([0.5])) == pytest.approx(ACKLEY_HALF_1D, abs=1e-12)

    def test_literature_forms(self):
        # 1/4000 prefactor and cos(2 pi x) oscillation
        assert griewank(np.array([2.0 * math.pi]), literature_forms=True) == \
            pytest.approx(math.pi ** 2 / 1000.0, abs=1e-12)
        assert rastrigin(np.array([1.0]), literature_forms=True) == \
            pytest.approx(1.0, abs=1e-12)


class TestInvariances:
    @given(hnp.arrays(float, 6, elements=st.floats(-10, 10)))
    @settings(max_examples=100, deadline=None)
    def test_evenness(self, x):
        for fn in (griewank, rastrigin, ackley):
            assert fn(-x) == pytest.approx(fn(x), rel=1e-12, abs=1e-12)

    @given(hnp.arrays(float, 6, elements=st.floats(-10, 10)),
           st.permutations(range(6)))
    @settings(max_examples=100, deadline=None)
    def test_permutation_invariance(self, x, perm):
        # rastrigin and ackley are coordinate-symmetric; griewank is not
        # (its cosine arguments carry 1/sqrt(i) weights)
        xp = x[np.array(perm)]
        assert rastrigin(xp) == pytest.approx(rastrigin(x), rel=1e-12, abs=1e-12)
        assert ackley(xp) == pytest.approx(ackley(x), rel=1e-9, abs=1e-9)

    def test_griewank_not_permutation_invariant(self):
        x = np.array([1.0, 2.0])
        assert griewank(x) != pytest.approx(griewank(x[::-1]), abs=1e-6)

    @given(hnp.arrays(float, 8, elements=st.floats(-20, 20)))
    @settings(max_examples=200, deadline=None)
    def test_nonnegative(self, x):
        for fn in (griewank, rastrigin, ackley):
            assert fn(x) >= -1e-9


class TestGlobalMinimumIsZeroVector:
    def test_1d_grid_scan(self):
        # fine 1-D scan inside each declared box: nothing beats the origin
        for name, fn in (("griewank", griewank), ("rastrigin", rastrigin),
                         ("ackley", ackley)):
            low, high = BENCHMARK_BOUNDS[name]
            grid = np.linspace(low, high, 20001).reshape(-1, 1)
            vals = fn(grid)
            assert vals.min() >= 0.0
            assert abs(grid[np.argmin(vals), 0]) < (high - low) / 20000 + 1e-12

    def test_d3_multistart(self):
        from scipy import optimize
        rng = np.random.default_rng(0)
        for fn in (griewank, rastrigin, ackley):
            best = math.inf
            # starts near the origin: local polish confirms the basin floor
            # is exactly 0, not a slightly negative value
            for _ in range(40):
                x0 = rng.uniform(-2.0, 2.0, 3)
                res = optimize.minimize(fn, x0, method="Nelder-Mead",
                                        options={"xatol": 1e-10, "fatol": 1e-12})
                best = min(best, res.fun)
            assert best >= -1e-12
            assert best < 1e-6  # some start lands in the global basin


class TestMakeBenchmark:
    def test_bounds_and_batch(self):
        h = make_benchmark("rastrigin", 4)
        assert h.dimension == 4
        assert np.all(h.bounds.upper == math.pi / 2.0)
        xs = np.array([[0.0] * 4, [1.0] * 4])
        vals = h.evaluate_many(xs)
        assert vals[0] == pytest.approx(0.0, abs=1e-12)
        assert vals[1] == pytest.approx(4 * RASTRIGIN_ONE_1D, abs=1e-12)

    def test_batch_matches_scalar(self):
        for name in ("griewank", "rastrigin", "ackley"):
            h = make_benchmark(name, 5)
            xs = np.random.default_rng(1).uniform(-3, 3, (10, 5))
            batch = h.evaluate_many(xs)
            singles = [h.evaluate(row) for row in xs]
            assert np.allclose(batch, singles, rtol=1e-14)

    def test_literature_switch_propagates(self):
        default = make_benchmark("griewank", 1)
        lit = make_benchmark("griewank", 1, literature_forms=True)
        x = np.array([2.0 * math.pi])
        assert default.evaluate(x) == pytest.approx(GRIEWANK_2PI_1D, abs=1e-12)
        assert lit.evaluate(x) == pytest.approx(math.pi ** 2 / 1000.0, abs=1e-12)

    def test_unknown_benchmark(self):
        with pytest.raises(ValueError):
            make_benchmark("schwefel", 2)
