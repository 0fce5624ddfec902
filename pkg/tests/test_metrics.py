import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sklearn.metrics import normalized_mutual_info_score

from signed_louvain import build_graph, graph_stats, nmi
from oracles import contingency_nmi, random_signed_graph


class TestNmi:
    def test_identical_partitions(self):
        assert nmi([0, 0, 1, 2, 1], [0, 0, 1, 2, 1]) == 1.0

    def test_uniform_contingency_is_zero(self):
        # {ab|cd} vs {ac|bd}: the contingency table is flat, so I = 0
        assert nmi([0, 0, 1, 1], [0, 1, 0, 1]) == 0.0

    def test_one_relabeled_node_matches_contingency_oracle(self):
        blocks = [0] * 30 + [1] * 20 + [2] * 10
        perturbed = list(blocks)
        perturbed[0] = 1
        expected = contingency_nmi(blocks, perturbed)
        assert nmi(blocks, perturbed) == pytest.approx(expected, abs=1e-9)
        assert nmi(blocks, perturbed) == pytest.approx(
            normalized_mutual_info_score(blocks, perturbed), abs=1e-9)

    def test_matches_sklearn_randomized(self):
        rng = random.Random(12)
        for _ in range(100):
            n = rng.randint(2, 40)
            a = [rng.randrange(1, 6) for _ in range(n)]
            b = [rng.randrange(1, 6) for _ in range(n)]
            assert nmi(a, b) == pytest.approx(
                normalized_mutual_info_score(a, b), abs=1e-9)

    def test_both_single_community(self):
        assert nmi([3, 3, 3], [1, 1, 1]) == 1.0

    def test_exactly_one_single_community(self):
        assert nmi([0, 0, 0], [0, 1, 2]) == 0.0
        assert nmi([0, 1, 2], [5, 5, 5]) == 0.0

    def test_single_node(self):
        assert nmi([0], [9]) == 1.0

    def test_node_set_mismatch(self):
        with pytest.raises(ValueError):
            nmi([0, 1], [0, 1, 2])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            nmi([], [])


labelings = st.lists(st.integers(0, 4), min_size=1, max_size=30)


@given(labelings, st.randoms(use_true_random=False))
def test_nmi_symmetry_and_relabel_invariance(a, rnd):
    b = [rnd.randrange(4) for _ in a]
    assert nmi(a, b) == nmi(b, a)
    permutation = {label: 10 - label for label in set(a)}
    assert nmi([permutation[x] for x in a], b) == nmi(a, b)
    assert nmi(a, a) == 1.0
    assert 0.0 <= nmi(a, b) <= 1.0


class TestGraphStats:
    def test_star_row(self, star):
        s = graph_stats(star)
        assert (s.nodes, s.edges) == (5, 4)
        assert s.pos_share == 0.0
        assert s.density == pytest.approx(0.4)
        # 4 pairs at distance 1, 6 pairs at distance 2
        assert s.avg_distance == pytest.approx(1.6)
        assert s.diameter == 2

    def test_complete_positive_triangle(self, triangle_positive):
        s = graph_stats(triangle_positive)
        assert s.density == pytest.approx(1.0)
        assert s.diameter == 1
        assert s.pos_share == 1.0

    def test_empty_graph(self):
        s = graph_stats(build_graph(0, []))
        assert (s.nodes, s.edges, s.pos_share, s.density, s.avg_distance, s.diameter) == (
            0, 0, 0.0, 0.0, 0.0, 0)

    def test_single_node(self):
        s = graph_stats(build_graph(1, []))
        assert s.avg_distance == 0.0 and s.diameter == 0

    def test_dual_layer_pair_counts_once(self):
        graph = build_graph(2, [(0, 1, 1.0), (0, 1, -2.0)])
        s = graph_stats(graph)
        assert s.edges == 1
        assert s.pos_share == pytest.approx(1.0 / 3.0)

    def test_distances_use_largest_component(self):
        graph = build_graph(6, [(0, 1, 1.0), (2, 3, -1.0), (3, 4, 1.0), (2, 4, 1.0), (4, 5, -1.0)])
        s = graph_stats(graph)
        # component {2,3,4,5} dominates; distances live there
        assert s.diameter == 2
        assert s.avg_distance == pytest.approx((1 + 1 + 1 + 1 + 2 + 2) / 6)

    def test_diameter_at_least_average(self):
        rng = random.Random(77)
        for _ in range(40):
            graph = random_signed_graph(rng, max_nodes=14)
            s = graph_stats(graph)
            if s.edges == 0:
                continue
            assert s.diameter >= s.avg_distance >= 1.0
