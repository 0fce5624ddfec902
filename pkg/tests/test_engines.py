import math
import random

import networkx as nx
import pytest

from signed_louvain import (
    EmptyNetworkError,
    EngineConfig,
    Partition,
    Resolution,
    build_graph,
    build_hop_neighbors,
    candidate_communities,
    flatten,
    move_phase,
    nmi,
    optimize,
    signed_modularity,
)
from signed_louvain.ssbm import SsbmSpec, generate
from oracles import (
    brute_force_max_modularity,
    random_connected_components_graph,
    random_signed_graph,
)

CLASSIC = EngineConfig(strategy="classic")
RELAXED = EngineConfig(strategy="relaxed")
HOP_DEFAULT = EngineConfig(strategy="hop", d_pos=1, d_neg=2)


def with_seed(config, seed):
    return EngineConfig(strategy=config.strategy, d_pos=config.d_pos,
                        d_neg=config.d_neg, resolution=config.resolution,
                        seed=seed, min_gain=config.min_gain,
                        max_levels=config.max_levels)


class TestEngineConfig:
    def test_hop_requires_positive_radii(self):
        with pytest.raises(ValueError):
            EngineConfig(strategy="hop", d_pos=0, d_neg=2)
        with pytest.raises(ValueError):
            EngineConfig(strategy="hop", d_pos=1, d_neg=0)

    def test_unknown_strategy(self):
        with pytest.raises(ValueError):
            EngineConfig(strategy="wander")

    def test_names(self):
        assert CLASSIC.name() == "classic"
        assert RELAXED.name() == "relaxed"
        assert HOP_DEFAULT.name() == "hop(1,2)"


class TestOptimizeOnStar:
    def test_classic_stays_at_singletons(self, star):
        report = optimize(star, with_seed(CLASSIC, 3))
        assert report.assignment == [0, 1, 2, 3, 4]
        assert report.q == pytest.approx(0.3125, abs=1e-12)

    def test_relaxed_finds_balanced_split(self, star):
        for seed in range(5):
            report = optimize(star, with_seed(RELAXED, seed))
            assert report.assignment == [0, 1, 1, 1, 1]
            assert report.q == pytest.approx(0.5, abs=1e-12)

    def test_hop_default_finds_balanced_split(self, star):
        for seed in range(5):
            report = optimize(star, with_seed(HOP_DEFAULT, seed))
            assert report.assignment == [0, 1, 1, 1, 1]
            assert report.q == pytest.approx(0.5, abs=1e-12)

    def test_star_split_is_global_maximum(self, star):
        best_q, best = brute_force_max_modularity(star)
        assert best_q == pytest.approx(0.5, abs=1e-12)
        assert best == [0, 1, 1, 1, 1]

    def test_empty_network_rejected(self):
        graph = build_graph(4, [])
        with pytest.raises(EmptyNetworkError, match="empty network"):
            optimize(graph, CLASSIC)

    def test_report_q_matches_recomputation(self, star):
        report = optimize(star, with_seed(HOP_DEFAULT, 1))
        assert report.q == pytest.approx(
            signed_modularity(star, report.assignment), abs=1e-9)


class TestHopOneOneRecoversClassic:
    def test_identical_partitions_on_random_graphs(self):
        rng = random.Random(555)
        hop11 = EngineConfig(strategy="hop", d_pos=1, d_neg=1)
        done = 0
        while done < 40:
            graph = random_signed_graph(rng, max_nodes=14)
            if graph.m_total == 0:
                continue
            seed = rng.randrange(2**32)
            a = optimize(graph, with_seed(CLASSIC, seed))
            b = optimize(graph, with_seed(hop11, seed))
            assert a.assignment == b.assignment
            assert a.q == b.q
            done += 1


class TestDeterminism:
    def test_same_config_same_result(self):
        rng = random.Random(8)
        for _ in range(10):
            graph = random_signed_graph(rng, max_nodes=15)
            if graph.m_total == 0:
                continue
            for config in (CLASSIC, RELAXED, HOP_DEFAULT):
                config = with_seed(config, 77)
                first = optimize(graph, config)
                second = optimize(graph, config)
                assert first.assignment == second.assignment
                assert first.q == second.q
                assert first.levels == second.levels
                assert first.moves == second.moves


class TestMovePhase:
    def test_no_move_when_no_positive_gain(self, star, unit_resolution):
        partition = Partition.singletons(star)
        sets = (build_hop_neighbors(star, "positive", 1).neighbor_sets,
                build_hop_neighbors(star, "negative", 1).neighbor_sets)
        moves, gain = move_phase(
            star, partition,
            lambda p, node: candidate_communities("hop", sets, p, node),
            unit_resolution, random.Random(0))
        assert moves == 0
        assert gain == 0.0
        assert partition.assignment == [0, 1, 2, 3, 4]

    def test_ssbm_first_level_recovers_blocks(self):
        # statistical check over 10 generator seeds at an easy density
        scores = []
        for seed in range(10):
            graph, planted = generate(SsbmSpec((30, 20, 10), 0.5, 0.5, seed))
            sets = (build_hop_neighbors(graph, "positive", 1).neighbor_sets,
                    build_hop_neighbors(graph, "negative", 2).neighbor_sets)
            partition = Partition.singletons(graph)
            move_phase(graph, partition,
                       lambda p, node: candidate_communities("hop", sets, p, node),
                       Resolution(), random.Random(seed))
            scores.append(nmi(partition.assignment, planted))
        assert sum(scores) / len(scores) >= 0.95

    def test_relaxed_star_first_move_joins_other_leaf(self, star, unit_resolution):
        from signed_louvain import move_gain

        partition = Partition.singletons(star)
        eligible = candidate_communities("relaxed", None, partition, 1)
        assert eligible == {0, 1, 2, 3, 4}
        gains = {b: move_gain(star, partition, unit_resolution, 1, b)
                 for b in eligible if b != 1}
        best = max(gains.values())
        assert best == pytest.approx(0.03125, abs=1e-12)
        assert {b for b, g in gains.items() if g == best} == {2, 3, 4}


class TestCandidateCommunities:
    def test_star_hop_default_sees_everyone(self, star):
        partition = Partition.singletons(star)
        sets = (build_hop_neighbors(star, "positive", 1).neighbor_sets,
                build_hop_neighbors(star, "negative", 2).neighbor_sets)
        assert candidate_communities("hop", sets, partition, 1) == {0, 1, 2, 3, 4}

    def test_star_classic_leaf_sees_center_only(self, star):
        partition = Partition.singletons(star)
        sets = (build_hop_neighbors(star, "positive", 1).neighbor_sets,
                build_hop_neighbors(star, "negative", 1).neighbor_sets)
        assert candidate_communities("classic", sets, partition, 1) == {0, 1}

    def test_relaxed_spans_components(self):
        graph = build_graph(4, [(0, 1, 1.0), (2, 3, 1.0)])
        partition = Partition.singletons(graph)
        assert candidate_communities("relaxed", None, partition, 0) == {0, 1, 2, 3}


class TestFlatten:
    def test_single_level_relabeled(self):
        assert flatten([[5, 5, 9, 9]]) == [0, 0, 1, 1]

    def test_two_level_composition(self):
        assert flatten([[0, 0, 1, 1], [0, 0]]) == [0, 0, 0, 0]

    def test_matches_direct_composition(self):
        rng = random.Random(10)
        for _ in range(50):
            n = rng.randint(2, 12)
            levels = []
            size = n
            for _ in range(3):
                k = rng.randint(1, size)
                assignment = list(range(k)) + [rng.randrange(k) for _ in range(size - k)]
                rng.shuffle(assignment)
                levels.append(assignment)
                size = k
            expected = []
            for node in range(n):
                c = levels[0][node]
                for nxt in levels[1:]:
                    c = nxt[c]
                expected.append(c)
            relabel = {}
            expected = [relabel.setdefault(c, len(relabel)) for c in expected]
            assert flatten(levels) == expected

    def test_size_mismatch_raises(self):
        with pytest.raises(ValueError, match="level size mismatch"):
            flatten([[0, 1, 1], [0]])

    def test_empty_stack_raises(self):
        with pytest.raises(ValueError):
            flatten([])


class TestMonotonicity:
    def test_flattened_q_non_decreasing_across_levels(self):
        rng = random.Random(314)
        checked = 0
        while checked < 40:
            graph = random_signed_graph(rng, max_nodes=20, edge_prob=0.3)
            if graph.m_total == 0:
                continue
            for config in (CLASSIC, RELAXED, HOP_DEFAULT):
                report = optimize(graph, with_seed(config, rng.randrange(2**32)))
                trace = report.level_q + [report.q]
                for earlier, later in zip(trace, trace[1:]):
                    assert later >= earlier - 1e-9
            checked += 1


def union_components(graph):
    g = nx.Graph()
    g.add_nodes_from(range(graph.node_count))
    for i in range(graph.node_count):
        for j, _ in graph.pos_adjacency[i]:
            g.add_edge(i, j)
        for j, _ in graph.neg_adjacency[i]:
            g.add_edge(i, j)
    return list(nx.connected_components(g))


def communities_respect_components(graph, assignment):
    component_of = {}
    for idx, comp in enumerate(union_components(graph)):
        for node in comp:
            component_of[node] = idx
    spanned = {}
    for node, c in enumerate(assignment):
        spanned.setdefault(c, set()).add(component_of[node])
    return all(len(s) == 1 for s in spanned.values())


class TestReachability:
    def test_classic_and_hop_respect_components(self):
        rng = random.Random(2718)
        hop22 = EngineConfig(strategy="hop", d_pos=2, d_neg=2)
        for _ in range(30):
            graph, _ = random_connected_components_graph(rng, parts=rng.randint(2, 3))
            if graph.m_total == 0:
                continue
            for config in (CLASSIC, HOP_DEFAULT, hop22):
                report = optimize(graph, with_seed(config, rng.randrange(2**32)))
                assert communities_respect_components(graph, report.assignment)

    def test_relaxed_can_violate_components(self):
        # two disjoint negative edges: the negative null model makes merging
        # nodes from different components profitable
        graph = build_graph(4, [(0, 1, -1.0), (2, 3, -1.0)])
        report = optimize(graph, with_seed(RELAXED, 0))
        assert not communities_respect_components(graph, report.assignment)


class TestSmallInstanceQuality:
    def test_sampled_small_graphs_reach_brute_force_optimum(self):
        from oracles import random_connected_signed_graph

        rng = random.Random(4242)
        for config in (HOP_DEFAULT, RELAXED):
            hits = 0
            total = 60
            for _ in range(total):
                graph = random_connected_signed_graph(rng, rng.randint(3, 5))
                best_q, _ = brute_force_max_modularity(graph)
                found = max(optimize(graph, with_seed(config, s)).q for s in range(10))
                if found >= best_q - 1e-9:
                    hits += 1
            assert hits / total >= 0.9
