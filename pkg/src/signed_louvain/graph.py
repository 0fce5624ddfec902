"""Two-layer signed graph storage, edge-list I/O, and aggregation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

LAYER_POSITIVE = "positive"
LAYER_NEGATIVE = "negative"


class EdgeListError(ValueError):
    """Malformed edge-list input; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass
class SignedGraph:
    """Weighted undirected graph split into a positive and a negative layer.

    Adjacency lists hold (neighbor, weight) pairs with weight > 0, sorted by
    neighbor id; the edge sign lives in the layer, so one node pair may carry
    weight in both layers at once (routine after aggregation). Self-loops are
    kept in separate per-node weight arrays because they only appear through
    aggregation or explicit ``u u w`` input lines.

    Degrees count self-loop weight twice, which keeps sum(k) == 2*m per layer
    and makes aggregation modularity-preserving. Instances are immutable by
    convention once built; all mutation goes through the builder functions.
    """

    node_count: int
    pos_adjacency: list
    neg_adjacency: list
    pos_self_loops: list
    neg_self_loops: list
    pos_degree: list
    neg_degree: list
    m_pos: float
    m_neg: float

    @property
    def m_total(self) -> float:
        return self.m_pos + self.m_neg


@dataclass
class NodeLabelMap:
    """Bijection between external string labels and dense internal ids."""

    labels: list = field(default_factory=list)
    index: dict = field(default_factory=dict)

    def add(self, label: str) -> int:
        """Return the id for label, assigning the next free id if new."""
        node_id = self.index.get(label)
        if node_id is None:
            node_id = len(self.labels)
            self.index[label] = node_id
            self.labels.append(label)
        return node_id

    def id_of(self, label: str) -> int:
        return self.index[label]

    def label_of(self, node_id: int) -> str:
        return self.labels[node_id]

    def __len__(self) -> int:
        return len(self.labels)


def _assemble(node_count, pos_pairs, neg_pairs, pos_loops, neg_loops) -> SignedGraph:
    """Build a SignedGraph from per-layer pair dicts {(i, j): w} with i < j."""
    pos_adj = [[] for _ in range(node_count)]
    neg_adj = [[] for _ in range(node_count)]
    for (i, j), w in pos_pairs.items():
        pos_adj[i].append((j, w))
        pos_adj[j].append((i, w))
    for (i, j), w in neg_pairs.items():
        neg_adj[i].append((j, w))
        neg_adj[j].append((i, w))
    for row in pos_adj:
        row.sort()
    for row in neg_adj:
        row.sort()
    pos_degree = [
        math.fsum(w for _, w in pos_adj[i]) + 2.0 * pos_loops[i]
        for i in range(node_count)
    ]
    neg_degree = [
        math.fsum(w for _, w in neg_adj[i]) + 2.0 * neg_loops[i]
        for i in range(node_count)
    ]
    m_pos = math.fsum(pos_pairs.values()) + math.fsum(pos_loops)
    m_neg = math.fsum(neg_pairs.values()) + math.fsum(neg_loops)
    return SignedGraph(
        node_count=node_count,
        pos_adjacency=pos_adj,
        neg_adjacency=neg_adj,
        pos_self_loops=pos_loops,
        neg_self_loops=neg_loops,
        pos_degree=pos_degree,
        neg_degree=neg_degree,
        m_pos=m_pos,
        m_neg=m_neg,
    )


def build_graph(node_count, signed_edges) -> SignedGraph:
    """Assemble a graph from (i, j, weight) triples with signed weights.

    The sign selects the layer and the magnitude becomes the layer weight.
    Duplicate pairs accumulate per layer, so a pair contributing +1 and -1
    keeps an entry in each layer instead of cancelling. i == j triples become
    self-loops. Zero or non-finite weights are rejected.
    """
    pos_pairs = {}
    neg_pairs = {}
    pos_loops = [0.0] * node_count
    neg_loops = [0.0] * node_count
    for i, j, w in signed_edges:
        if not 0 <= i < node_count or not 0 <= j < node_count:
            raise ValueError(f"node id out of range: ({i}, {j})")
        if not math.isfinite(w) or w == 0:
            raise ValueError(f"edge weight must be finite and non-zero, got {w!r}")
        if w > 0:
            loops, pairs, mag = pos_loops, pos_pairs, w
        else:
            loops, pairs, mag = neg_loops, neg_pairs, -w
        if i == j:
            loops[i] += mag
        else:
            key = (i, j) if i < j else (j, i)
            pairs[key] = pairs.get(key, 0.0) + mag
    return _assemble(node_count, pos_pairs, neg_pairs, pos_loops, neg_loops)


def load_edge_list(text_stream):
    """Parse a signed edge list into a graph plus its label map.

    Lines are ``u v w`` (whitespace separated, w a signed decimal), a bare
    ``u`` declaring an isolated node, blank, or ``#`` comments. Duplicate
    pairs accumulate per sign; ``u u w`` lines become self-loops.

    Returns (SignedGraph, NodeLabelMap). Raises EdgeListError with the
    offending line number on bad weights (zero weight included: its layer
    would be ambiguous).
    """
    labels = NodeLabelMap()
    edges = []
    for line_no, raw in enumerate(text_stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) == 1:
            labels.add(tokens[0])
            continue
        if len(tokens) != 3:
            raise EdgeListError(line_no, f"expected 'u v w' or a bare node label, got {line!r}")
        try:
            w = float(tokens[2])
        except ValueError:
            raise EdgeListError(line_no, f"non-numeric weight {tokens[2]!r}") from None
        if not math.isfinite(w):
            raise EdgeListError(line_no, f"non-finite weight {tokens[2]!r}")
        if w == 0:
            raise EdgeListError(line_no, "zero weight is rejected (ambiguous sign)")
        edges.append((labels.add(tokens[0]), labels.add(tokens[1]), w))
    return build_graph(len(labels), edges), labels


def serialize_edge_list(graph: SignedGraph) -> str:
    """Canonical text form: every node declared once, then sorted edge lines.

    Node declaration lines come first (ids ascending) so that re-loading maps
    each label back to the same id, making load -> serialize idempotent after
    the first round trip. Edge lines carry internal ids with i <= j, the sign
    applied to the weight (6 significant digits), sorted by (i, j, weight);
    a pair stored in both layers emits two lines.
    """
    lines = [str(i) for i in range(graph.node_count)]
    entries = []
    for i in range(graph.node_count):
        for j, w in graph.pos_adjacency[i]:
            if i <= j:
                entries.append((i, j, w))
        for j, w in graph.neg_adjacency[i]:
            if i <= j:
                entries.append((i, j, -w))
        if graph.pos_self_loops[i] > 0:
            entries.append((i, i, graph.pos_self_loops[i]))
        if graph.neg_self_loops[i] > 0:
            entries.append((i, i, -graph.neg_self_loops[i]))
    entries.sort()
    lines.extend(f"{i} {j} {w:.6g}" for i, j, w in entries)
    return "\n".join(lines) + "\n" if lines else ""


def degrees(graph: SignedGraph):
    """Cached per-node (positive, negative) weighted degrees.

    Self-loop weight is counted twice, so each array sums to 2*m of its layer.
    """
    return graph.pos_degree, graph.neg_degree


def aggregate(graph: SignedGraph, partition):
    """Quotient the graph by a partition, one node per non-empty community.

    Intra-community weight becomes a layer self-loop on the new node (with
    degree counting it twice, total layer weights m+ and m- are preserved);
    inter-community weights sum per layer. Accepts a Partition or a plain
    per-node assignment sequence. Returns (aggregated graph, map from old
    community id to new node id); new ids follow ascending old community id.
    """
    assignment = getattr(partition, "assignment", partition)
    if len(assignment) != graph.node_count:
        raise ValueError("partition does not cover all nodes")
    index_map = {c: idx for idx, c in enumerate(sorted(set(assignment)))}
    k = len(index_map)
    pos_pairs = {}
    neg_pairs = {}
    pos_loops = [0.0] * k
    neg_loops = [0.0] * k
    for i in range(graph.node_count):
        ci = index_map[assignment[i]]
        pos_loops[ci] += graph.pos_self_loops[i]
        neg_loops[ci] += graph.neg_self_loops[i]
        for j, w in graph.pos_adjacency[i]:
            if j < i:
                continue
            cj = index_map[assignment[j]]
            if ci == cj:
                pos_loops[ci] += w
            else:
                key = (ci, cj) if ci < cj else (cj, ci)
                pos_pairs[key] = pos_pairs.get(key, 0.0) + w
        for j, w in graph.neg_adjacency[i]:
            if j < i:
                continue
            cj = index_map[assignment[j]]
            if ci == cj:
                neg_loops[ci] += w
            else:
                key = (ci, cj) if ci < cj else (cj, ci)
                neg_pairs[key] = neg_pairs.get(key, 0.0) + w
    return _assemble(k, pos_pairs, neg_pairs, pos_loops, neg_loops), index_map


def layer_neighbor_ids(graph: SignedGraph, layer: str):
    """Per-node sorted neighbor ids of one layer (weights dropped)."""
    if layer == LAYER_POSITIVE:
        adjacency = graph.pos_adjacency
    elif layer == LAYER_NEGATIVE:
        adjacency = graph.neg_adjacency
    else:
        raise ValueError(f"unknown layer {layer!r}")
    return [[j for j, _ in row] for row in adjacency]


def union_neighbor_ids(graph: SignedGraph):
    """Per-node sorted neighbor ids of the sign-blind union of both layers."""
    out = []
    for i in range(graph.node_count):
        seen = {j for j, _ in graph.pos_adjacency[i]}
        seen.update(j for j, _ in graph.neg_adjacency[i])
        out.append(sorted(seen))
    return out
