"""Closed-form budget formulas against hand-evaluated values."""

import math

import numpy as np
import pytest

import hs2
from hs2.bounds import BoundsError


def inputs_example(**overrides):
    base = dict(n=100, k=2, beta=0.5, m=1, kappa=3, c_min=2, delta=0.1, p=0.1)
    base.update(overrides)
    return hs2.BoundInputs(**base)


class TestWitnessBound:
    def test_half_half(self):
        assert hs2.witness_sample_bound(0.5, 0.5) == pytest.approx(2.0)

    def test_tight_confidence(self):
        assert hs2.witness_sample_bound(0.5, 0.1) == pytest.approx(math.log(20) / math.log(2))

    def test_delta_one_limit(self):
        assert hs2.witness_sample_bound(0.5, 1.0) == pytest.approx(1.0)

    def test_degenerate_balance_rejected(self):
        with pytest.raises(BoundsError):
            hs2.witness_sample_bound(0.0, 0.5)
        with pytest.raises(BoundsError):
            hs2.witness_sample_bound(1.0, 0.5)


class TestPointBound:
    def test_worked_example(self):
        got = hs2.point_query_bound(inputs_example())
        assert got == pytest.approx(math.log(20) / math.log(2) + 6 + 6, abs=1e-9)
        assert got == pytest.approx(16.3219, abs=5e-4)

    def test_no_cut_leaves_witness_only(self):
        inp = inputs_example(m=0, c_min=0, kappa=1)
        assert hs2.point_query_bound(inp) == pytest.approx(hs2.witness_sample_bound(0.5, 0.1))

    def test_radius_one_terms(self):
        inp = inputs_example(kappa=1, m=2, c_min=3)
        expected = hs2.witness_sample_bound(0.5, 0.1) + 2 * math.ceil(math.log2(100)) + 3 * 1
        assert hs2.point_query_bound(inp) == pytest.approx(expected)

    def test_radius_above_n_rejected(self):
        with pytest.raises(BoundsError):
            hs2.point_query_bound(inputs_example(kappa=101))

    def test_monotone_in_structural_terms(self):
        # c_min >= m keeps the radius trade-off one-sided
        base = dict(m=2, c_min=8, kappa=2)
        lo = hs2.point_query_bound(inputs_example(**base))
        for field in ("n", "m", "c_min", "kappa"):
            bumped = dict(base)
            bumped[field] = 2 * bumped.get(field, getattr(inputs_example(), field))
            assert hs2.point_query_bound(inputs_example(**bumped)) >= lo
        assert hs2.point_query_bound(inputs_example(beta=0.25)) >= hs2.point_query_bound(inputs_example(beta=0.5))


class TestPairBound:
    def test_doubles_point_bound(self):
        inp = inputs_example()
        assert hs2.pair_query_bound(inp) == pytest.approx(2 * hs2.point_query_bound(inp))
        assert hs2.pair_query_bound(inp) == pytest.approx(32.6439, abs=5e-4)

    def test_single_class_equals_point(self):
        inp = inputs_example(k=1, beta=1.0 - 1e-9)
        assert hs2.pair_query_bound(inp) == pytest.approx(hs2.point_query_bound(inp))

    def test_scaling(self):
        inp3 = inputs_example(k=3, beta=1 / 3)
        assert hs2.pair_query_bound(inp3) == pytest.approx(3 * hs2.point_query_bound(inp3))


class TestSearchPhaseBound:
    def test_worked_example(self):
        assert hs2.search_phase_bound(inputs_example()) == pytest.approx(12.0)

    def test_no_cut_zero(self):
        assert hs2.search_phase_bound(inputs_example(m=0, c_min=0, kappa=1)) == pytest.approx(0.0)

    def test_identity(self):
        inp = inputs_example()
        assert hs2.search_phase_bound(inp) == pytest.approx(
            hs2.point_query_bound(inp) - hs2.witness_sample_bound(inp.beta, inp.delta)
        )


class TestBernoulliKl:
    def test_identity_zero(self):
        assert hs2.bernoulli_kl(0.5, 0.5) == 0.0

    def test_half_vs_quarter(self):
        expected = 0.5 * math.log(2) + 0.5 * math.log(2 / 3)
        assert hs2.bernoulli_kl(0.5, 0.25) == pytest.approx(expected)
        assert hs2.bernoulli_kl(0.5, 0.25) == pytest.approx(0.14384, abs=5e-5)

    def test_quarter_vs_half(self):
        expected = 0.25 * math.log(0.5) + 0.75 * math.log(1.5)
        assert hs2.bernoulli_kl(0.25, 0.5) == pytest.approx(expected)
        assert hs2.bernoulli_kl(0.25, 0.5) == pytest.approx(0.13081, abs=5e-5)

    def test_boundary_infinite(self):
        assert math.isinf(hs2.bernoulli_kl(0.5, 0.0))
        assert math.isinf(hs2.bernoulli_kl(0.5, 1.0))
        assert hs2.bernoulli_kl(0.0, 0.0) == 0.0


class TestKlLowerBound:
    def test_equal_parameters(self):
        assert hs2.kl_lower_bound(0.3, 0.3) == 0.0

    def test_worked_example(self):
        assert hs2.kl_lower_bound(0.25, 0.5) == pytest.approx(0.125)
        assert hs2.kl_lower_bound(0.25, 0.5) <= hs2.bernoulli_kl(0.25, 0.5)

    def test_inequality_where_it_holds(self):
        # dividing by the smaller parameter makes the bound fail near
        # y = 2x with both parameters small (see the defect regression
        # below); away from that region the stated form holds
        for x, y in [(0.25, 0.5), (0.5, 0.25), (0.4, 0.6), (0.3, 0.7), (0.45, 0.55)]:
            assert hs2.bernoulli_kl(x, y) >= hs2.kl_lower_bound(x, y)

    def test_stated_denominator_fails_for_small_parameters(self):
        # divergence 0.0167 is below the claimed floor 0.025; dividing by
        # the larger parameter (0.0125) would hold instead
        assert hs2.bernoulli_kl(0.05, 0.1) < hs2.kl_lower_bound(0.05, 0.1)
        assert hs2.bernoulli_kl(0.05, 0.1) >= (0.1 - 0.05) ** 2 / (2 * 0.1)

    def test_larger_parameter_denominator_holds_on_grid(self):
        grid = np.arange(0.05, 0.951, 0.05)
        for x in grid:
            for y in grid:
                x_f, y_f = float(x), float(y)
                assert hs2.bernoulli_kl(x_f, y_f) >= (y_f - x_f) ** 2 / (2 * max(x_f, y_f))


class TestMinSeedSampleSize:
    def brute(self, k, beta, p, delta, q, limit=10**6):
        ratio = 128.0 * k / (beta * (2 * p - 1) ** 4)
        for m in range(3, limit + 1):
            if m / math.log(m) < ratio:
                continue
            if m < (12.0 / beta) * math.log(4.0 * k / delta):
                continue
            if m < 8.0 / delta:
                continue
            if k > 1 and m < (2.0 / (beta * hs2.bernoulli_kl(0.5, p))) * math.log(8.0 * (k - 1) * q / delta):
                continue
            return m
        raise AssertionError("brute force scan exhausted")

    def test_matches_bruteforce_spot(self):
        got = hs2.min_seed_sample_size(2, 0.5, 0.1, 0.2, 20.0)
        assert got == self.brute(2, 0.5, 0.1, 0.2, 20.0)

    def test_monotone_in_p(self):
        values = [hs2.min_seed_sample_size(2, 0.5, p, 0.2, 20.0) for p in (0.05, 0.1, 0.2, 0.3, 0.4)]
        assert values == sorted(values)

    def test_small_delta_dominated_by_confidence(self):
        delta = 1e-4
        assert hs2.min_seed_sample_size(2, 0.5, 0.1, delta, 20.0) >= 8.0 / delta

    def test_p_zero_rejected(self):
        with pytest.raises(BoundsError):
            hs2.min_seed_sample_size(2, 0.5, 0.0, 0.2, 20.0)


class TestNoisyBudget:
    def test_linearity_in_search_bound(self):
        inp = inputs_example()
        m_seed = 100
        lo = hs2.noisy_query_bound(inp, m_seed, 20.0)
        hi = hs2.noisy_query_bound(inp, m_seed, 40.0)
        assert hi - lo == pytest.approx(20.0 * m_seed)

    def test_worked_example(self):
        inp = inputs_example(k=2, p=0.1)
        expected = 20.0 * 100 + 128 * 100 * 4 * math.log(100) / (0.8**4)
        assert hs2.noisy_query_bound(inp, 100, 20.0) == pytest.approx(expected)

    def test_diverges_toward_half(self):
        inp_far = inputs_example(p=0.4)
        inp_near = inputs_example(p=0.49)
        assert hs2.noisy_query_bound(inp_near, 100, 20.0) > hs2.noisy_query_bound(inp_far, 100, 20.0)

    def test_small_seed_rejected(self):
        with pytest.raises(BoundsError):
            hs2.noisy_query_bound(inputs_example(), 1, 20.0)


class TestBoundReport:
    def test_plain_report(self):
        report = hs2.bound_report(inputs_example())
        assert report.point_bound == pytest.approx(16.3219, abs=5e-4)
        assert report.min_seed_size is None

    def test_noisy_report_consistent(self):
        report = hs2.bound_report(inputs_example(), noisy=True)
        assert report.min_seed_size >= 3
        assert report.noisy_bound > 0
        assert len(report.seed_thresholds) == 4
        assert all(report.min_seed_size >= t for t in report.seed_thresholds)
