import math

import numpy as np
import pytest
from scipy import stats as sps

from portbt.rmt import (
    CHUNK_SIZE,
    GueSampleStats,
    lambda_max_exact_d2,
    lambda_max_mean,
    lambda_max_samples,
    sample_gue0,
    semicircle_ratio,
)


class TestSampling:
    def test_one_dimensional_is_zero(self):
        for g in sample_gue0(1, seed=3, count=10):
            assert abs(g[0, 0]) == 0.0

    @pytest.mark.parametrize("d", [2, 3, 5])
    def test_hermitian_traceless(self, d):
        for g in sample_gue0(d, seed=1, count=50):
            assert np.abs(g - g.conj().T).max() < 1e-12
            assert abs(np.trace(g)) < 1e-12

    def test_reproducible(self):
        a = list(sample_gue0(3, seed=9, count=5))
        b = list(sample_gue0(3, seed=9, count=5))
        for x, y in zip(a, b):
            assert (x == y).all()

    def test_chunk_boundaries_do_not_shift_samples(self):
        # sample k of a longer run equals sample k of a shorter run
        long = lambda_max_samples(2, seed=4, count=CHUNK_SIZE + 10)
        short = lambda_max_samples(2, seed=4, count=CHUNK_SIZE)
        assert (long[:CHUNK_SIZE] == short).all()

    def test_trace_square_mean(self):
        # E[tr G^2] = d^2 - 1
        for d, tol in [(2, 0.05), (3, 0.1)]:
            stats = lambda_max_mean(d, seed=2, count=50_000)
            assert stats.mean_trace_sq == pytest.approx(d * d - 1, abs=tol)


class TestLambdaMax:
    def test_closed_form_matches_eigensolver(self):
        direct = lambda_max_samples(2, seed=8, count=1000, use_closed_form=True)
        generic = lambda_max_samples(2, seed=8, count=1000, use_closed_form=False)
        assert np.abs(direct - generic).max() < 1e-10

    def test_stats_reproducible(self):
        a = lambda_max_mean(3, seed=5, count=30_000)
        b = lambda_max_mean(3, seed=5, count=30_000)
        assert a == b

    def test_mean_positive_with_stderr(self):
        s = lambda_max_mean(2, seed=0, count=5000)
        assert isinstance(s, GueSampleStats)
        assert s.mean_lambda_max > 0
        assert s.stderr > 0

    def test_d2_constant(self):
        s = lambda_max_mean(2, seed=12, count=200_000)
        assert abs(s.mean_lambda_max - lambda_max_exact_d2()) < 5 * s.stderr

    def test_exact_value(self):
        assert lambda_max_exact_d2() == pytest.approx(1.1283791671, abs=1e-9)

    def test_chi3_distribution_small(self):
        x = math.sqrt(2.0) * lambda_max_samples(2, seed=21, count=50_000)
        p = sps.kstest(x, "chi", args=(3,)).pvalue
        assert p > 0.001


class TestSemicircleRatio:
    def test_reference_values(self):
        s2 = GueSampleStats(2, 10, 0, 1.12838, 0.0, 3.0)
        assert semicircle_ratio(2, s2) == pytest.approx(0.3990, abs=2e-4)
        s5 = GueSampleStats(5, 10, 0, 3.06311, 0.0, 24.0)
        assert semicircle_ratio(5, s5) == pytest.approx(0.6849, abs=2e-4)

    def test_monotone_in_d_on_reference_constants(self):
        constants = {2: 1.12838, 3: 1.90414, 4: 2.52811, 5: 3.06311}
        ratios = [
            semicircle_ratio(d, GueSampleStats(d, 10, 0, c, 0.0, 0.0))
            for d, c in constants.items()
        ]
        assert all(a < b for a, b in zip(ratios, ratios[1:]))

    def test_rejects_mismatched_d(self):
        with pytest.raises(ValueError):
            semicircle_ratio(3, GueSampleStats(2, 10, 0, 1.0, 0.1, 3.0))
