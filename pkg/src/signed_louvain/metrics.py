"""Partition agreement (NMI) and whole-graph descriptive statistics."""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass

from .graph import SignedGraph, union_neighbor_ids


def nmi(p1, p2) -> float:
    """Normalized mutual information between two partitions, in [0, 1].

    2*I/(H1 + H2) with natural logarithms over the joint label contingency
    table and 0*log 0 = 0. Two single-community partitions agree perfectly
    (1.0); if exactly one side is single-community the score is 0. Accepts
    Partition objects or plain assignment sequences over the same node set.
    """
    a1 = list(getattr(p1, "assignment", p1))
    a2 = list(getattr(p2, "assignment", p2))
    if len(a1) != len(a2):
        raise ValueError(f"partitions cover different node sets ({len(a1)} vs {len(a2)} nodes)")
    n = len(a1)
    if n == 0:
        raise ValueError("partitions must cover at least one node")
    counts1 = Counter(a1)
    counts2 = Counter(a2)
    h1 = -math.fsum(c / n * math.log(c / n) for c in counts1.values())
    h2 = -math.fsum(c / n * math.log(c / n) for c in counts2.values())
    if h1 == 0.0 and h2 == 0.0:
        return 1.0
    if h1 == 0.0 or h2 == 0.0:
        return 0.0
    joint = Counter(zip(a1, a2))
    if len(joint) == len(counts1) == len(counts2):
        # one joint cell per label on each side: the partitions are identical
        # up to relabeling, so report exact agreement instead of I/H rounding
        return 1.0
    mutual = math.fsum(
        c / n * math.log(n * c / (counts1[l1] * counts2[l2]))
        for (l1, l2), c in joint.items()
    )
    return min(1.0, max(0.0, 2.0 * mutual / (h1 + h2)))


@dataclass(frozen=True)
class GraphStats:
    """The six summary columns reported per network."""

    nodes: int
    edges: int
    pos_share: float
    density: float
    avg_distance: float
    diameter: int


def graph_stats(graph: SignedGraph) -> GraphStats:
    """Structural summary of a signed graph.

    edges counts stored unordered pairs across the union of the two layers
    (a pair present in both layers counts once; self-loops are not pairs).
    Distances are unweighted shortest paths on the sign-blind union graph,
    restricted to the largest connected component; both distance fields are
    0 when that component has fewer than 2 nodes.
    """
    n = graph.node_count
    union = union_neighbor_ids(graph)
    edges = sum(len(row) for row in union) // 2
    m = graph.m_total
    pos_share = graph.m_pos / m if m > 0 else 0.0
    density = 2.0 * edges / (n * (n - 1)) if n > 1 else 0.0
    component = _largest_component(union, n)
    if len(component) < 2:
        return GraphStats(n, edges, pos_share, density, 0.0, 0)
    total = 0
    pairs = 0
    diameter = 0
    for source in component:
        dist = _bfs_distances(union, source)
        for node in component:
            if node > source:
                d = dist[node]
                total += d
                pairs += 1
                if d > diameter:
                    diameter = d
    return GraphStats(n, edges, pos_share, density, total / pairs, diameter)


def _largest_component(union, n):
    """Nodes of the largest connected component (first found wins ties)."""
    seen = [False] * n
    best = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        component = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in union[u]:
                if not seen[v]:
                    seen[v] = True
                    component.append(v)
                    queue.append(v)
        if len(component) > len(best):
            best = component
    best.sort()
    return best


def _bfs_distances(union, source):
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        d = dist[u] + 1
        for v in union[u]:
            if v not in dist:
                dist[v] = d
                queue.append(v)
    return dist
