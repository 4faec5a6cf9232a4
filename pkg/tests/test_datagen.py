"""Generators and instance file parsing."""

import itertools
import math

import numpy as np
import pytest

import hs2
from hs2.datagen import DataGenError, read_features_text
from hs2.labels import LabelError, read_labels_text


class TestBlockModel:
    def test_full_within_none_across(self):
        g, f = hs2.block_model(hs2.BlockModelParams(n=12, k=2, q_in=1.0, q_out=0.0, seed=1))
        assert g.m == 2 * math.comb(6, 3)
        profile = hs2.cut_profile(g, f)
        assert profile.m == 0

    def test_edgeless(self):
        g, _ = hs2.block_model(hs2.BlockModelParams(n=12, k=2, q_in=0.0, q_out=0.0, seed=1))
        assert g.m == 0

    def test_rate_concentration(self):
        g, f = hs2.block_model(hs2.BlockModelParams(n=30, k=2, q_in=0.8, q_out=0.2, seed=9))
        within_candidates = 2 * math.comb(15, 3)
        cross_candidates = math.comb(30, 3) - within_candidates
        within = sum(1 for e in g.edges if len({f.labels[v] for v in e}) == 1)
        cross = g.m - within
        for count, total, rate in ((within, within_candidates, 0.8), (cross, cross_candidates, 0.2)):
            sigma = math.sqrt(total * rate * (1 - rate))
            pull = abs(count - total * rate) / sigma
            if pull > 3.0:
                print(f"rate concentration at {pull:.2f} sigma (flagged, not failed)")
            assert pull <= 4.0

    def test_determinism(self):
        params = hs2.BlockModelParams(n=24, k=3, q_in=0.7, q_out=0.3, seed=123)
        g1, f1 = hs2.block_model(params)
        g2, f2 = hs2.block_model(params)
        assert g1 == g2 and f1 == f2

    def test_classes_are_contiguous_blocks(self):
        _, f = hs2.block_model(hs2.BlockModelParams(n=12, k=3, q_in=0.5, q_out=0.1, seed=4))
        assert f.labels == (0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2, 2)

    def test_uneven_split_rejected(self):
        with pytest.raises(DataGenError, match="divisible"):
            hs2.BlockModelParams(n=10, k=3, q_in=0.5, q_out=0.1, seed=0)

    def test_probability_order_rejected(self):
        with pytest.raises(DataGenError):
            hs2.BlockModelParams(n=10, k=2, q_in=0.2, q_out=0.5, seed=0)


class TestNearestNeighbor:
    def test_three_collinear_points_dedupe(self):
        features = hs2.FeatureMatrix(np.array([[0.0], [1.0], [2.0]]))
        g = hs2.nearest_neighbor_hypergraph(features, neighbors=2)
        assert g.n == 3 and g.edges == ((0, 1, 2),)

    def test_single_neighbor_graph(self):
        features = hs2.FeatureMatrix(np.array([[0.0], [1.0], [5.0], [6.0]]))
        g = hs2.nearest_neighbor_hypergraph(features, neighbors=1)
        assert all(len(e) == 2 for e in g.edges)
        assert g.edges == ((0, 1), (2, 3))

    def test_duplicate_points_tie_to_smaller_index(self):
        features = hs2.FeatureMatrix(np.array([[0.0], [0.0], [0.0], [9.0]]))
        g1 = hs2.nearest_neighbor_hypergraph(features, neighbors=2)
        g2 = hs2.nearest_neighbor_hypergraph(features, neighbors=2)
        assert g1 == g2
        # nodes 0-2 each pick the two smallest-index duplicates; node 3
        # ties across all three and keeps indices 0 and 1
        assert g1.edges == ((0, 1, 2), (0, 1, 3))

    def test_every_node_covered(self):
        rng = np.random.default_rng(3)
        features = hs2.FeatureMatrix(rng.normal(size=(40, 5)))
        g = hs2.nearest_neighbor_hypergraph(features, neighbors=2)
        covered = set(itertools.chain.from_iterable(g.edges))
        assert covered == set(range(40))

    def test_too_few_points(self):
        with pytest.raises(DataGenError):
            hs2.nearest_neighbor_hypergraph(hs2.FeatureMatrix(np.array([[0.0], [1.0]])), neighbors=2)


class TestLabelFile:
    def test_well_formed(self):
        f = read_labels_text("0 0\n1 1\n2 0\n3 1\n")
        assert f.k == 2 and f.labels == (0, 1, 0, 1)

    def test_out_of_order_ids(self):
        f = read_labels_text("2 0\n0 1\n1 0\n")
        assert f.labels == (1, 0, 0)

    def test_empty_rejected(self):
        with pytest.raises(LabelError, match="empty"):
            read_labels_text("")

    def test_malformed_line_number(self):
        with pytest.raises(LabelError, match="line 2"):
            read_labels_text("0 0\n1 zero\n")

    def test_class_gap_rejected(self):
        with pytest.raises(LabelError, match="gaps"):
            read_labels_text("0 0\n1 2\n")

    def test_round_trip(self, tmp_path):
        f = hs2.label_function([0, 1, 1, 0, 2])
        path = tmp_path / "inst.labels"
        hs2.save_labels(f, path)
        assert hs2.load_labels(path) == f


class TestFeatureFile:
    def test_well_formed(self):
        fm = read_features_text("0.0,1.0\n2.5,3.5\n")
        assert fm.count == 2
        assert fm.rows.shape == (2, 2)

    def test_ragged_row_named(self):
        with pytest.raises(DataGenError, match="line 2"):
            read_features_text("0.0,1.0\n2.5\n")

    def test_non_numeric_named(self):
        with pytest.raises(DataGenError, match="line 1"):
            read_features_text("a,b\n")

    def test_empty_rejected(self):
        with pytest.raises(DataGenError, match="empty"):
            read_features_text("\n\n")
