"""Louvain-family optimizers over signed graphs.

Three candidate strategies share one move/aggregate skeleton:

* classic  - a node may join communities of its direct neighbors (both layers);
* relaxed  - a node may join any non-empty community;
* hop      - a node may join communities of nodes within d+ hops in the
             positive layer or d- hops in the negative layer (defaults 1 and 2,
             the enemy-of-my-enemy search radius; hop(1,1) recovers classic).
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .graph import SignedGraph, aggregate, layer_neighbor_ids
from .hopgraph import build_hop_neighbors
from .modularity import Partition, Resolution, signed_modularity

STRATEGIES = ("classic", "relaxed", "hop")


class EmptyNetworkError(ValueError):
    """Raised when an optimizer is pointed at a graph with no edges."""


@dataclass(frozen=True)
class EngineConfig:
    strategy: str = "hop"
    d_pos: int = 1
    d_neg: int = 2
    resolution: Resolution = Resolution()
    seed: int = 0
    min_gain: float = 1e-9
    max_levels: int = 64

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        if self.strategy == "hop" and (self.d_pos < 1 or self.d_neg < 1):
            raise ValueError("hop strategy requires d_pos >= 1 and d_neg >= 1")
        if not self.min_gain > 0:
            raise ValueError("min_gain must be positive")
        if self.max_levels < 1:
            raise ValueError("max_levels must be at least 1")

    def name(self) -> str:
        if self.strategy == "hop":
            return f"hop({self.d_pos},{self.d_neg})"
        return self.strategy


@dataclass
class RunReport:
    """Outcome of one optimizer run, on the original node set."""

    engine: str
    seed: int
    assignment: list
    q: float
    levels: int
    moves: int
    wall_time: float
    level_q: list = field(default_factory=list)


def candidate_communities(strategy, hop_neighborhoods, partition, node):
    """Communities the node may be moved into, its own always included.

    hop_neighborhoods is a (positive_sets, negative_sets) pair of per-node id
    lists; the classic strategy passes the layers' direct adjacency (its
    1-hop sets), and relaxed ignores the argument entirely.
    """
    own = partition.assignment[node]
    if strategy == "relaxed":
        out = set(partition.size)
        out.add(own)
        return out
    pos_sets, neg_sets = hop_neighborhoods
    assignment = partition.assignment
    out = {assignment[j] for j in pos_sets[node]}
    out.update(assignment[j] for j in neg_sets[node])
    out.add(own)
    return out


def move_phase(working_graph, partition, candidates, resolution, rng, min_gain=1e-9):
    """Greedy node sweeps until one full sweep moves nothing.

    candidates is a callable (partition, node) -> iterable of community ids.
    Each node goes to the eligible community with the highest gain if that
    gain exceeds min_gain, ties broken by smallest community id; community
    totals are updated in place. Returns (moves made, total Q gain).
    """
    m = working_graph.m_total
    m_pos = working_graph.m_pos
    m_neg = working_graph.m_neg
    g_pos = resolution.gamma_pos
    g_neg = resolution.gamma_neg
    pos_adj = working_graph.pos_adjacency
    neg_adj = working_graph.neg_adjacency
    k_pos = working_graph.pos_degree
    k_neg = working_graph.neg_degree
    assignment = partition.assignment
    s_pos = partition.pos_strength
    s_neg = partition.neg_strength
    threshold = min_gain * m
    order = list(range(working_graph.node_count))
    total_moves = 0
    total_value = 0.0
    while True:
        rng.shuffle(order)
        moved = 0
        for i in order:
            weights = {}
            for j, w in pos_adj[i]:
                c = assignment[j]
                weights[c] = weights.get(c, 0.0) + w
            for j, w in neg_adj[i]:
                c = assignment[j]
                weights[c] = weights.get(c, 0.0) - w
            source = assignment[i]
            coef_pos = g_pos * k_pos[i] / (2.0 * m_pos) if m_pos > 0 else 0.0
            coef_neg = g_neg * k_neg[i] / (2.0 * m_neg) if m_neg > 0 else 0.0
            # terms independent of the target community, source totals taken
            # with i removed
            base = (coef_pos * (s_pos[source] - k_pos[i])
                    - coef_neg * (s_neg[source] - k_neg[i])
                    - weights.get(source, 0.0))
            best_value = 0.0
            best_comm = source
            for b in candidates(partition, i):
                if b == source:
                    continue
                value = base + weights.get(b, 0.0) - coef_pos * s_pos[b] + coef_neg * s_neg[b]
                if value > best_value or (value == best_value and b < best_comm):
                    best_value = value
                    best_comm = b
            if best_value > threshold and best_comm != source:
                partition.move(i, best_comm)
                moved += 1
                total_value += best_value
        if moved == 0:
            break
        total_moves += moved
    return total_moves, total_value / m if m > 0 else 0.0


def flatten(level_assignments):
    """Compose per-level assignments into one over the original nodes.

    Each level's assignment must be over the previous level's aggregated
    nodes, i.e. community ids 0..k-1 where k is the next level's node count.
    Output community ids are relabeled 0..k-1 by first appearance.
    """
    if not level_assignments:
        raise ValueError("no levels to flatten")
    current = list(level_assignments[0])
    for nxt in level_assignments[1:]:
        expected = max(current) + 1 if current else 0
        if len(nxt) != expected:
            raise ValueError(f"level size mismatch: got {len(nxt)} assignments for {expected} communities")
        current = [nxt[c] for c in current]
    relabel = {}
    out = []
    for c in current:
        if c not in relabel:
            relabel[c] = len(relabel)
        out.append(relabel[c])
    return out


def _make_candidates(working_graph, config):
    if config.strategy == "relaxed":
        return lambda partition, node: candidate_communities("relaxed", None, partition, node)
    if config.strategy == "classic":
        sets = (layer_neighbor_ids(working_graph, "positive"),
                layer_neighbor_ids(working_graph, "negative"))
    else:
        sets = (build_hop_neighbors(working_graph, "positive", config.d_pos).neighbor_sets,
                build_hop_neighbors(working_graph, "negative", config.d_neg).neighbor_sets)
    strategy = config.strategy
    return lambda partition, node: candidate_communities(strategy, sets, partition, node)


def optimize(graph: SignedGraph, config: EngineConfig) -> RunReport:
    """Full multi-level optimization; every level restarts from singletons.

    Hop neighborhoods are rebuilt from scratch for every level (aggregation
    changes the topology). Stops when a move phase moves nothing, the level
    gain drops below min_gain, or max_levels is hit. The reported Q is a full
    recomputation on the original graph, never the accumulated gain.
    """
    if graph.m_total == 0:
        raise EmptyNetworkError("empty network")
    rng = random.Random(config.seed)
    start = time.perf_counter()
    working = graph
    level_assignments = []
    level_q = []
    total_moves = 0
    levels = 0
    for _ in range(config.max_levels):
        partition = Partition.singletons(working)
        candidates = _make_candidates(working, config)
        levels += 1
        moves, gain = move_phase(working, partition, candidates, config.resolution, rng, config.min_gain)
        total_moves += moves
        if moves == 0:
            break
        aggregated, index_map = aggregate(working, partition)
        level_assignments.append([index_map[c] for c in partition.assignment])
        level_q.append(signed_modularity(graph, flatten(level_assignments), config.resolution))
        working = aggregated
        if gain < config.min_gain:
            break
    if level_assignments:
        final = flatten(level_assignments)
    else:
        final = list(range(graph.node_count))
    q = signed_modularity(graph, final, config.resolution)
    wall_time = time.perf_counter() - start
    return RunReport(
        engine=config.name(),
        seed=config.seed,
        assignment=final,
        q=q,
        levels=levels,
        moves=total_moves,
        wall_time=wall_time,
        level_q=level_q,
    )
