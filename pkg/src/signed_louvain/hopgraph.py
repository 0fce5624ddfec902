"""Hop-bounded candidate neighborhoods on one layer of a signed graph."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import SignedGraph, layer_neighbor_ids


@dataclass
class HopNeighborhood:
    """Per-node nodes at layer distance 1..d (self excluded), as sorted lists."""

    d: int
    neighbor_sets: list


def build_hop_neighbors(graph: SignedGraph, layer: str, d: int) -> HopNeighborhood:
    """All nodes within d unit-weight hops per source node on one layer.

    Exploration ignores edge weights: membership means unweighted distance
    between 1 and d. d = 1 reproduces the layer's direct adjacency exactly.
    """
    if d < 1:
        raise ValueError("hop radius must be at least 1")
    ids = layer_neighbor_ids(graph, layer)
    if d == 1:
        return HopNeighborhood(1, [list(row) for row in ids])
    sets = []
    for source in range(graph.node_count):
        seen = {source}
        frontier = ids[source]
        seen.update(frontier)
        found = list(frontier)
        for _ in range(d - 1):
            nxt = []
            for u in frontier:
                for v in ids[u]:
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
            if not nxt:
                break
            found.extend(nxt)
            frontier = nxt
        found.sort()
        sets.append(found)
    return HopNeighborhood(d, sets)
