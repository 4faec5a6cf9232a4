"""Breadth-first traversal over node/hyperedge incidence in CSR form.

Path lengths count hyperedges, so one BFS level crosses exactly one
hyperedge. All routines accept an optional boolean ``alive`` mask over
hyperedges; dead hyperedges are never traversed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

UNREACHED = -1


@dataclass(frozen=True)
class AdjacencyArrays:
    """CSR views of a hypergraph: node->incident edges and edge->members."""

    n: int
    m: int
    node_ptr: np.ndarray
    node_edges: np.ndarray
    edge_ptr: np.ndarray
    edge_members: np.ndarray

    @classmethod
    def from_edges(cls, n: int, edges: tuple[tuple[int, ...], ...]) -> "AdjacencyArrays":
        m = len(edges)
        sizes = np.fromiter((len(e) for e in edges), dtype=np.int64, count=m)
        edge_ptr = np.zeros(m + 1, dtype=np.int64)
        np.cumsum(sizes, out=edge_ptr[1:])
        if m:
            edge_members = np.concatenate([np.asarray(e, dtype=np.int32) for e in edges])
        else:
            edge_members = np.zeros(0, dtype=np.int32)
        degrees = np.bincount(edge_members, minlength=n).astype(np.int64)
        node_ptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(degrees, out=node_ptr[1:])
        node_edges = np.zeros(edge_members.size, dtype=np.int32)
        cursor = node_ptr[:-1].copy()
        for eid in range(m):
            for v in edges[eid]:
                node_edges[cursor[v]] = eid
                cursor[v] += 1
        return cls(n, m, node_ptr, node_edges, edge_ptr, edge_members)


def _take_csr(ptr: np.ndarray, data: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """Concatenate data[ptr[r]:ptr[r+1]] for each r in rows."""
    counts = ptr[rows + 1] - ptr[rows]
    total = int(counts.sum())
    if total == 0:
        return np.zeros(0, dtype=data.dtype)
    shift = np.repeat(ptr[rows] - (np.cumsum(counts) - counts), counts)
    return data[np.arange(total, dtype=np.int64) + shift]


def bfs_levels(
    adj: AdjacencyArrays,
    sources: np.ndarray,
    alive: np.ndarray | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Hyperedge-count distances from a source node set.

    Returns (node_dist, edge_dist); node_dist[v] is the least number of
    hyperedges on any path from a source to v (0 for sources), edge_dist[e]
    the level at which hyperedge e is first crossed. UNREACHED marks nodes
    and edges never met.
    """
    node_dist = np.full(adj.n, UNREACHED, dtype=np.int32)
    edge_dist = np.full(adj.m, UNREACHED, dtype=np.int32)
    frontier = np.asarray(sources, dtype=np.int64)
    if frontier.size == 0:
        raise ValueError("bfs_levels needs at least one source node")
    node_dist[frontier] = 0
    level = 0
    while frontier.size:
        eids = _take_csr(adj.node_ptr, adj.node_edges, frontier)
        if eids.size:
            eids = eids[edge_dist[eids] == UNREACHED]
            if alive is not None and eids.size:
                eids = eids[alive[eids]]
        if eids.size == 0:
            break
        level += 1
        edge_dist[eids] = level
        crossed = np.flatnonzero(edge_dist == level)
        nids = _take_csr(adj.edge_ptr, adj.edge_members, crossed)
        nids = nids[node_dist[nids] == UNREACHED]
        node_dist[nids] = level
        frontier = np.flatnonzero(node_dist == level)
    return node_dist, edge_dist


def shortest_edge_sequence(
    adj: AdjacencyArrays,
    u: int,
    v: int,
    alive: np.ndarray | None = None,
    dist_to_v: np.ndarray | None = None,
) -> tuple[list[int], list[int]] | None:
    """Deterministic minimum-length hyperedge sequence from u to v.

    Ties break by smallest hyperedge id at each step, then smallest junction
    id. Returns (edge_ids, junctions) with len(junctions) == len(edge_ids)-1,
    or None when v is unreachable. u == v yields ([], []).
    """
    if u == v:
        return [], []
    if dist_to_v is None:
        dist_to_v, _ = bfs_levels(adj, np.array([v], dtype=np.int64), alive)
    length = int(dist_to_v[u])
    if length == UNREACHED:
        return None
    far = np.int64(1) << 60
    node_cost = dist_to_v.astype(np.int64)
    node_cost[dist_to_v == UNREACHED] = far

    def pick_edge(anchor_nodes: np.ndarray, want: int) -> int:
        cand = np.unique(_take_csr(adj.node_ptr, adj.node_edges, anchor_nodes).astype(np.int64))
        if alive is not None:
            cand = cand[alive[cand]]
        if cand.size == 0:
            return -1
        flat = node_cost[_take_csr(adj.edge_ptr, adj.edge_members, cand)]
        counts = adj.edge_ptr[cand + 1] - adj.edge_ptr[cand]
        starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
        remaining = 1 + np.minimum.reduceat(flat, starts)
        hits = np.flatnonzero(remaining == want)
        return int(cand[hits[0]]) if hits.size else -1

    edge_ids: list[int] = []
    junctions: list[int] = []
    anchor_nodes = np.array([u], dtype=np.int64)
    for step in range(length):
        chosen = pick_edge(anchor_nodes, length - step)
        if chosen < 0:
            return None
        if edge_ids:
            prev = adj.edge_members[adj.edge_ptr[edge_ids[-1]] : adj.edge_ptr[edge_ids[-1] + 1]]
            cur = adj.edge_members[adj.edge_ptr[chosen] : adj.edge_ptr[chosen + 1]]
            junctions.append(int(np.intersect1d(prev, cur).min()))
        edge_ids.append(chosen)
        anchor_nodes = adj.edge_members[adj.edge_ptr[chosen] : adj.edge_ptr[chosen + 1]].astype(np.int64)
    return edge_ids, junctions


def component_labels(adj: AdjacencyArrays, alive: np.ndarray | None = None) -> np.ndarray:
    """Connected-component id per node; ids ordered by smallest member."""
    comp = np.full(adj.n, UNREACHED, dtype=np.int64)
    next_id = 0
    for start in range(adj.n):
        if comp[start] != UNREACHED:
            continue
        node_dist, _ = bfs_levels(adj, np.array([start], dtype=np.int64), alive)
        comp[node_dist != UNREACHED] = next_id
        next_id += 1
    return comp
