"""Hypergraph values: construction, paths, connectivity, clique expansion.

A hypergraph is immutable after construction; operations that change the
edge set return new values. A path is a sequence of pairwise-intersecting
hyperedges and its length is the number of hyperedges crossed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .traversal import UNREACHED, AdjacencyArrays, bfs_levels, component_labels, shortest_edge_sequence


class HypergraphError(ValueError):
    """Raised for malformed hypergraph construction or invalid edge ids."""


@dataclass(frozen=True)
class HyperPath:
    """A hyperedge sequence joining two nodes.

    junctions[i] lies in edge_seq[i] & edge_seq[i+1]; the empty path
    (length 0) is admitted only for equal endpoints.
    """

    edge_seq: tuple[int, ...]
    junctions: tuple[int, ...]
    endpoints: tuple[int, int]

    @property
    def length(self) -> int:
        return len(self.edge_seq)

    def __post_init__(self) -> None:
        if len(self.edge_seq) == 0 and self.endpoints[0] != self.endpoints[1]:
            raise HypergraphError("empty path requires equal endpoints")
        if self.edge_seq and len(self.junctions) != len(self.edge_seq) - 1:
            raise HypergraphError("junction count must be path length - 1")


@dataclass(frozen=True)
class Hypergraph:
    """n nodes and an ordered tuple of hyperedges (sorted node tuples)."""

    n: int
    edges: tuple[tuple[int, ...], ...]
    _incidence: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    _adj_cache: list = field(default_factory=list, repr=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        return self._incidence

    def adjacency(self) -> AdjacencyArrays:
        if not self._adj_cache:
            self._adj_cache.append(AdjacencyArrays.from_edges(self.n, self.edges))
        return self._adj_cache[0]

    def edge_set(self, eid: int) -> frozenset[int]:
        return frozenset(self.edges[eid])


def build(n: int, edge_lists) -> Hypergraph:
    """Validate and index a hypergraph from node count and hyperedge lists."""
    if n < 1:
        raise HypergraphError(f"node count must be >= 1, got {n}")
    edges: list[tuple[int, ...]] = []
    seen: set[frozenset[int]] = set()
    for pos, raw in enumerate(edge_lists):
        members = sorted(set(raw))
        if len(members) < 2:
            raise HypergraphError(f"hyperedge {pos} has fewer than 2 distinct nodes: {sorted(raw)}")
        if members[0] < 0 or members[-1] >= n:
            raise HypergraphError(f"hyperedge {pos} has node ids outside [0, {n}): {members}")
        key = frozenset(members)
        if key in seen:
            raise HypergraphError(f"duplicate hyperedge at position {pos}: {members}")
        seen.add(key)
        edges.append(tuple(members))
    incidence: list[list[int]] = [[] for _ in range(n)]
    for eid, members in enumerate(edges):
        for v in members:
            incidence[v].append(eid)
    return Hypergraph(n=n, edges=tuple(edges), _incidence=tuple(tuple(ix) for ix in incidence))


def shortest_path(g: Hypergraph, u: int, v: int) -> HyperPath | None:
    """Minimum-length path between u and v, or None when disconnected.

    Deterministic: ties break by smallest hyperedge id per step, then
    smallest junction id. u == v returns the empty path by convention.
    """
    _check_node(g, u)
    _check_node(g, v)
    found = shortest_edge_sequence(g.adjacency(), u, v)
    if found is None:
        return None
    edge_ids, junctions = found
    return HyperPath(tuple(edge_ids), tuple(junctions), (u, v))


def distance_matrix(g: Hypergraph, sources) -> dict[int, int]:
    """Least path length from any source to each reachable node."""
    src = sorted(set(sources))
    if not src:
        raise HypergraphError("sources must be non-empty")
    for s in src:
        _check_node(g, s)
    node_dist, _ = bfs_levels(g.adjacency(), np.asarray(src, dtype=np.int64))
    return {v: int(d) for v, d in enumerate(node_dist) if d != UNREACHED}


def connected_components(g: Hypergraph) -> list[list[int]]:
    """Node partition into path-connected blocks, ordered by least member."""
    labels = component_labels(g.adjacency())
    blocks: list[list[int]] = [[] for _ in range(int(labels.max()) + 1)]
    for v, c in enumerate(labels):
        blocks[int(c)].append(v)
    return blocks


def remove_edges(g: Hypergraph, edge_ids) -> tuple[Hypergraph, dict[int, int]]:
    """Drop hyperedges; returns the new hypergraph and an old->new id map."""
    drop = set(edge_ids)
    for eid in drop:
        if not 0 <= eid < g.m:
            raise HypergraphError(f"edge id {eid} outside [0, {g.m})")
    kept = [members for eid, members in enumerate(g.edges) if eid not in drop]
    id_map = {}
    new_id = 0
    for eid in range(g.m):
        if eid not in drop:
            id_map[eid] = new_id
            new_id += 1
    return build(g.n, kept), id_map


def clique_expansion(g: Hypergraph) -> Hypergraph:
    """2-uniform hypergraph with a pair edge wherever a hyperedge covers it."""
    pairs: set[tuple[int, int]] = set()
    for members in g.edges:
        pairs.update(itertools.combinations(members, 2))
    return build(g.n, sorted(pairs))


def write_hypergraph_text(g: Hypergraph) -> str:
    """Canonical text form: `n m` then one sorted hyperedge per line."""
    lines = [f"{g.n} {g.m}"]
    lines.extend(" ".join(str(v) for v in members) for members in g.edges)
    return "\n".join(lines) + "\n"


def read_hypergraph_text(text: str) -> Hypergraph:
    """Parse the text form; `#`-prefixed lines are comments."""
    rows = [line for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    if not rows:
        raise HypergraphError("empty hypergraph file")
    head = rows[0].split()
    if len(head) != 2:
        raise HypergraphError(f"header must be 'n m', got {rows[0]!r}")
    n, m = int(head[0]), int(head[1])
    if len(rows) - 1 != m:
        raise HypergraphError(f"expected {m} hyperedge lines, found {len(rows) - 1}")
    edges = [[int(tok) for tok in row.split()] for row in rows[1:]]
    return build(n, edges)


def save_hypergraph(g: Hypergraph, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(write_hypergraph_text(g))


def load_hypergraph(path) -> Hypergraph:
    with open(path, "r", encoding="ascii") as fh:
        return read_hypergraph_text(fh.read())


def _check_node(g: Hypergraph, v: int) -> None:
    if not 0 <= v < g.n:
        raise HypergraphError(f"node id {v} outside [0, {g.n})")
