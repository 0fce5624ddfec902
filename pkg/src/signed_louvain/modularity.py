"""Signed modularity, its unsigned reduction, and incremental move gains.

The objective scored here, for a two-layer graph with total layer weights
m+ and m- (m = m+ + m-), resolution parameters g+ and g-, and degrees k
counting self-loop weight twice, is

    Q = (1/2m) * sum over ordered node pairs (i, j), i = j included, of
        [A_ij - (g+ * k+_i * k+_j / (2 m+) - g- * k-_i * k-_j / (2 m-))]
        for pairs inside one community,

with A_ij the net signed weight (positive layer minus negative layer), a
diagonal entry contributing twice the stored self-loop weight, and a null
model term dropped entirely when its layer is empty (m+ = 0 or m- = 0).
Q of an empty graph (m = 0) is 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graph import SignedGraph


@dataclass(frozen=True)
class Resolution:
    """Resolution parameters scaling the positive and negative null models."""

    gamma_pos: float = 1.0
    gamma_neg: float = 1.0

    def __post_init__(self):
        for name in ("gamma_pos", "gamma_neg"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ValueError(f"{name} must be finite and non-negative, got {value!r}")


class Partition:
    """Node-to-community assignment with per-community degree totals.

    Keeps, for every non-empty community, the positive and negative degree
    sums and the member count; a community emptied by a move is dropped on
    the spot. Mutation happens only through move(), so a partition can be
    shared read-only once an optimizer run is done with it.
    """

    __slots__ = ("graph", "assignment", "pos_strength", "neg_strength", "size", "_next_id")

    def __init__(self, graph: SignedGraph, assignment):
        assignment = list(assignment)
        if len(assignment) != graph.node_count:
            raise ValueError("assignment does not cover all nodes")
        self.graph = graph
        self.assignment = assignment
        self.pos_strength = {}
        self.neg_strength = {}
        self.size = {}
        for node, c in enumerate(assignment):
            self.pos_strength[c] = self.pos_strength.get(c, 0.0) + graph.pos_degree[node]
            self.neg_strength[c] = self.neg_strength.get(c, 0.0) + graph.neg_degree[node]
            self.size[c] = self.size.get(c, 0) + 1
        self._next_id = max(self.size) + 1 if self.size else 0

    @classmethod
    def singletons(cls, graph: SignedGraph) -> "Partition":
        return cls(graph, range(graph.node_count))

    def communities(self):
        """Live community ids (non-empty by construction)."""
        return self.size.keys()

    def community_count(self) -> int:
        return len(self.size)

    def move(self, node: int, target=None) -> int:
        """Reassign node; target None allocates a fresh singleton community.

        Returns the community the node ends up in. Moving to an id that is
        neither live nor the node's current community is an error.
        """
        source = self.assignment[node]
        if target is None:
            target = self._next_id
            self._next_id += 1
        elif target != source and target not in self.size:
            raise ValueError(f"unknown community {target!r}")
        if target == source:
            return source
        k_pos = self.graph.pos_degree[node]
        k_neg = self.graph.neg_degree[node]
        if self.size[source] == 1:
            del self.size[source]
            del self.pos_strength[source]
            del self.neg_strength[source]
        else:
            self.size[source] -= 1
            self.pos_strength[source] -= k_pos
            self.neg_strength[source] -= k_neg
        self.size[target] = self.size.get(target, 0) + 1
        self.pos_strength[target] = self.pos_strength.get(target, 0.0) + k_pos
        self.neg_strength[target] = self.neg_strength.get(target, 0.0) + k_neg
        self.assignment[node] = target
        return target


def _as_assignment(graph, partition):
    assignment = getattr(partition, "assignment", partition)
    if len(assignment) != graph.node_count:
        raise ValueError("partition does not cover all nodes")
    return assignment


def signed_modularity(graph: SignedGraph, partition, resolution: Resolution = Resolution()) -> float:
    """Evaluate Q from scratch for a partition (Partition or assignment list).

    This is the full recomputation path; optimizers use the incremental
    move_gain below, and tests pin the two against each other.
    """
    m = graph.m_total
    if m == 0:
        return 0.0
    assignment = _as_assignment(graph, partition)
    intra = 0.0
    pos_strength = {}
    neg_strength = {}
    for i in range(graph.node_count):
        c = assignment[i]
        intra += 2.0 * (graph.pos_self_loops[i] - graph.neg_self_loops[i])
        pos_strength[c] = pos_strength.get(c, 0.0) + graph.pos_degree[i]
        neg_strength[c] = neg_strength.get(c, 0.0) + graph.neg_degree[i]
        for j, w in graph.pos_adjacency[i]:
            if j > i and assignment[j] == c:
                intra += 2.0 * w
        for j, w in graph.neg_adjacency[i]:
            if j > i and assignment[j] == c:
                intra -= 2.0 * w
    null = 0.0
    if graph.m_pos > 0:
        null += resolution.gamma_pos * math.fsum(s * s for s in pos_strength.values()) / (2.0 * graph.m_pos)
    if graph.m_neg > 0:
        null -= resolution.gamma_neg * math.fsum(s * s for s in neg_strength.values()) / (2.0 * graph.m_neg)
    return (intra - null) / (2.0 * m)


def unsigned_modularity(graph: SignedGraph, partition, gamma: float = 1.0) -> float:
    """Classic generalized modularity; only defined when the negative layer is empty."""
    if graph.m_neg > 0:
        raise ValueError("unsigned modularity requires a graph with no negative edges")
    return signed_modularity(graph, partition, Resolution(gamma_pos=gamma, gamma_neg=0.0))


def _net_weights_by_community(graph, assignment, node):
    """Net signed weight from node to each community of its direct neighbors."""
    weights = {}
    for j, w in graph.pos_adjacency[node]:
        c = assignment[j]
        weights[c] = weights.get(c, 0.0) + w
    for j, w in graph.neg_adjacency[node]:
        c = assignment[j]
        weights[c] = weights.get(c, 0.0) - w
    return weights


def move_gain(graph: SignedGraph, partition: Partition, resolution: Resolution, node: int, target) -> float:
    """Q(after moving node to target) - Q(before), computed incrementally.

    target may be a live community id or None for a fresh singleton. The
    node's diagonal terms cancel in the difference, so only its links and the
    degree totals of the two touched communities (node excluded) enter:

        dQ = (1/m) * [(w_to_target - w_to_rest_of_source)
                      - g+ * k+_node * (S+_target - S+_source') / (2 m+)
                      + g- * k-_node * (S-_target - S-_source') / (2 m-)]
    """
    source = partition.assignment[node]
    if target == source:
        return 0.0
    if target is not None and target not in partition.size:
        raise ValueError(f"unknown community {target!r}")
    weights = _net_weights_by_community(graph, partition.assignment, node)
    k_pos = graph.pos_degree[node]
    k_neg = graph.neg_degree[node]
    s_pos_source = partition.pos_strength[source] - k_pos
    s_neg_source = partition.neg_strength[source] - k_neg
    if target is None:
        s_pos_target = s_neg_target = w_target = 0.0
    else:
        s_pos_target = partition.pos_strength[target]
        s_neg_target = partition.neg_strength[target]
        w_target = weights.get(target, 0.0)
    value = w_target - weights.get(source, 0.0)
    if graph.m_pos > 0:
        value -= resolution.gamma_pos * k_pos * (s_pos_target - s_pos_source) / (2.0 * graph.m_pos)
    if graph.m_neg > 0:
        value += resolution.gamma_neg * k_neg * (s_neg_target - s_neg_source) / (2.0 * graph.m_neg)
    return value / graph.m_total


def pairwise_term(graph: SignedGraph, resolution: Resolution, i: int, j: int) -> float:
    """Contribution of the pair (i, j) to Q if they share a community.

    Diagnostic for non-neighbor joins: for non-adjacent nodes the sign is the
    balance of the two null models, so a dominant negative null model makes
    joining a non-neighbor profitable.
    """
    if i == j:
        raise ValueError("pairwise term is defined for distinct nodes")
    m = graph.m_total
    if m == 0:
        return 0.0
    a_ij = 0.0
    for node, w in graph.pos_adjacency[i]:
        if node == j:
            a_ij += w
    for node, w in graph.neg_adjacency[i]:
        if node == j:
            a_ij -= w
    value = a_ij
    if graph.m_pos > 0:
        value -= resolution.gamma_pos * graph.pos_degree[i] * graph.pos_degree[j] / (2.0 * graph.m_pos)
    if graph.m_neg > 0:
        value += resolution.gamma_neg * graph.neg_degree[i] * graph.neg_degree[j] / (2.0 * graph.m_neg)
    return value / m
