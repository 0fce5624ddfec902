"""Signed stochastic block model: positive intra-block, negative inter-block."""

from __future__ import annotations

import struct
from dataclasses import dataclass
from hashlib import blake2b

from .graph import SignedGraph, build_graph
from .modularity import Partition

_SEED_LIMIT = 2**64


@dataclass(frozen=True)
class SsbmSpec:
    """Planted-partition generator parameters.

    p_in is the inclusion probability of a positive unit edge for each
    intra-block pair, p_out the probability of a negative unit edge for each
    inter-block pair. There are no self-loops and no sign noise.
    """

    block_sizes: tuple
    p_in: float
    p_out: float
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "block_sizes", tuple(self.block_sizes))
        if not self.block_sizes or any(s < 1 for s in self.block_sizes):
            raise ValueError("block sizes must be positive integers")
        if sum(self.block_sizes) < 2:
            raise ValueError("need at least 2 nodes in total")
        for name in ("p_in", "p_out"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {p!r}")
        if not 0 <= self.seed < _SEED_LIMIT:
            raise ValueError("seed must fit in 64 unsigned bits")


def pair_uniform(seed: int, i: int, j: int) -> float:
    """Uniform in [0, 1) depending only on (seed, i, j).

    Hash-based rather than a sequential stream, so the indicator of one pair
    never depends on how many other pairs were drawn before it; regeneration
    with the same seed is bit-identical on any platform.
    """
    digest = blake2b(struct.pack("<QQQ", seed, i, j), digest_size=8).digest()
    return int.from_bytes(digest, "little") / 2.0**64


def generate(spec: SsbmSpec):
    """Draw a graph from the model; returns (graph, planted partition).

    Isolated nodes are retained, so the node count is always the sum of the
    block sizes even when both probabilities are 0.
    """
    membership = [b for b, size in enumerate(spec.block_sizes) for _ in range(size)]
    n = len(membership)
    p_in = spec.p_in
    p_out = spec.p_out
    seed = spec.seed
    edges = []
    for i in range(n):
        b_i = membership[i]
        for j in range(i + 1, n):
            if membership[j] == b_i:
                if p_in > 0.0 and pair_uniform(seed, i, j) < p_in:
                    edges.append((i, j, 1.0))
            elif p_out > 0.0 and pair_uniform(seed, i, j) < p_out:
                edges.append((i, j, -1.0))
    graph = build_graph(n, edges)
    return graph, Partition(graph, membership)
