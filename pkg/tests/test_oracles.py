"""Oracle answers, noise behavior, and query accounting."""

import pytest

import hs2
from hs2.oracles import OracleError


def truth_two_class(n=10):
    return hs2.label_function([0] * (n // 2) + [1] * (n - n // 2))


class TestPointwise:
    def test_returns_truth_and_counts(self):
        oracle = hs2.PointwiseOracle(truth=hs2.label_function([0, 0, 0, 1]))
        assert hs2.ledger_snapshot(oracle) == (0, 0)
        assert oracle.query_point(3) == 1
        assert hs2.ledger_snapshot(oracle) == (1, 0)

    def test_repeat_queries_charged(self):
        oracle = hs2.PointwiseOracle(truth=truth_two_class())
        assert oracle.query_point(2) == oracle.query_point(2)
        assert oracle.ledger.point_count == 2

    def test_invalid_node_leaves_ledger(self):
        oracle = hs2.PointwiseOracle(truth=truth_two_class())
        with pytest.raises(OracleError):
            oracle.query_point(99)
        assert hs2.ledger_snapshot(oracle) == (0, 0)


class TestPairwiseNoiseless:
    def test_same_class(self):
        oracle = hs2.PairwiseOracle(truth=truth_two_class())
        assert oracle.query_pair(0, 1) == 1

    def test_different_class(self):
        oracle = hs2.PairwiseOracle(truth=truth_two_class())
        assert oracle.query_pair(0, 9) == 0

    def test_self_pair_rejected(self):
        oracle = hs2.PairwiseOracle(truth=truth_two_class())
        with pytest.raises(OracleError):
            oracle.query_pair(3, 3)
        assert oracle.ledger.pair_count == 0

    def test_counts(self):
        oracle = hs2.PairwiseOracle(truth=truth_two_class())
        oracle.query_pair(0, 1)
        oracle.query_pair(1, 2)
        assert hs2.ledger_snapshot(oracle) == (0, 2)


class TestPairwiseNoisy:
    def test_flip_rate_monte_carlo(self):
        n = 4000
        truth = hs2.label_function([0] * n)
        oracle = hs2.PairwiseOracle(truth=truth, flip_prob=0.3, rng_seed=11)
        wrong = sum(1 - oracle.query_pair(2 * i, 2 * i + 1) for i in range(n // 2))
        rate = wrong / (n // 2)
        assert abs(rate - 0.3) < 0.033

    def test_persistent_repeats_and_symmetry(self):
        oracle = hs2.PairwiseOracle(truth=truth_two_class(), flip_prob=0.4, rng_seed=5)
        answers = {(u, v): oracle.query_pair(u, v) for u in range(10) for v in range(10) if u != v}
        for (u, v), bit in answers.items():
            assert answers[(v, u)] == bit
        assert len(oracle._answer_cache) == 45

    def test_fresh_mode_redraws(self):
        truth = hs2.label_function([0] * 2)
        oracle = hs2.PairwiseOracle(truth=truth, flip_prob=0.45, noise_mode="fresh", rng_seed=3)
        answers = {oracle.query_pair(0, 1) for _ in range(200)}
        assert answers == {0, 1}

    def test_determinism_same_seed(self):
        def collect():
            oracle = hs2.PairwiseOracle(truth=truth_two_class(), flip_prob=0.25, rng_seed=42)
            return [oracle.query_pair(u, v) for u in range(10) for v in range(u + 1, 10)]

        assert collect() == collect()

    def test_invalid_probability(self):
        with pytest.raises(OracleError):
            hs2.PairwiseOracle(truth=truth_two_class(), flip_prob=0.5)


class TestTrace:
    def test_trace_lines(self):
        oracle = hs2.PairwiseOracle(truth=truth_two_class())
        hs2.enable_tracing(oracle)
        oracle.query_pair(0, 1)
        oracle.query_pair(0, 9)
        text = hs2.format_trace(oracle.ledger)
        assert text == "0 pair 0 1 1\n1 pair 0 9 0\n"

    def test_counters_match_trace_length(self):
        oracle = hs2.PointwiseOracle(truth=truth_two_class())
        hs2.enable_tracing(oracle)
        for v in range(4):
            oracle.query_point(v)
        assert oracle.ledger.point_count == len(oracle.ledger.trace)

    def test_trace_disabled_raises(self):
        oracle = hs2.PointwiseOracle(truth=truth_two_class())
        with pytest.raises(OracleError):
            hs2.format_trace(oracle.ledger)
