"""Shared fixtures and independent reference implementations."""

from __future__ import annotations

import itertools
import math
import random

import hs2


def line_graph():
    """Five nodes chained by four pair edges."""
    return hs2.build(5, [[0, 1], [1, 2], [2, 3], [3, 4]])


def ladder():
    """Nodes 0,1 in one class and 2,3 in the other; the class-crossing
    rungs are edges 2 and 3."""
    g = hs2.build(4, [[0, 1], [2, 3], [0, 2], [1, 3]])
    f = hs2.label_function([0, 0, 1, 1])
    return g, f


def random_hypergraph(rng: random.Random, max_n: int = 10, max_edges: int = 10, max_size: int = 4):
    """Random instance with at least one edge."""
    n = rng.randint(2, max_n)
    wanted = rng.randint(1, max_edges)
    edges = set()
    for _ in range(wanted):
        size = rng.randint(2, min(max_size, n))
        edges.add(frozenset(rng.sample(range(n), size)))
    return hs2.build(n, [sorted(e) for e in sorted(edges, key=sorted)])


def random_labels(rng: random.Random, n: int, max_k: int = 4) -> hs2.LabelFunction:
    """Random total labeling with every class in [0, k) populated."""
    k = rng.randint(1, min(max_k, n))
    labels = [rng.randrange(k) for _ in range(n)]
    for c, spot in enumerate(rng.sample(range(n), k)):
        labels[spot] = c
    return hs2.LabelFunction(tuple(labels), k)


def pairwise_distance_floyd(g: hs2.Hypergraph) -> dict[tuple[int, int], int]:
    """Independent all-pairs path lengths via Floyd-Warshall on the
    hyperedge intersection graph (no BFS involved)."""
    m = g.m
    big = math.inf
    ed = [[0 if i == j else big for j in range(m)] for i in range(m)]
    sets = [set(e) for e in g.edges]
    for i in range(m):
        for j in range(i + 1, m):
            if sets[i] & sets[j]:
                ed[i][j] = ed[j][i] = 1
    for mid in range(m):
        for i in range(m):
            row = ed[i]
            via = row[mid]
            if via is big:
                continue
            other = ed[mid]
            for j in range(m):
                cand = via + other[j]
                if cand < row[j]:
                    row[j] = cand
    dist: dict[tuple[int, int], int] = {}
    for u in range(g.n):
        for v in range(g.n):
            if u == v:
                dist[(u, v)] = 0
                continue
            best = big
            for i in range(m):
                if u not in sets[i]:
                    continue
                for j in range(m):
                    if v in sets[j]:
                        best = min(best, ed[i][j] + 1)
            if best is not big:
                dist[(u, v)] = int(best)
    return dist


def all_triples_instance():
    """Every 3-subset of six nodes, all labels distinct."""
    g = hs2.build(6, list(itertools.combinations(range(6), 3)))
    f = hs2.label_function(list(range(6)))
    return g, f


def single_big_edge_instance():
    """One 4-node hyperedge, four distinct labels."""
    return hs2.build(4, [[0, 1, 2, 3]]), hs2.label_function([0, 1, 2, 3])
