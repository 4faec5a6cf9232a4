"""Active cut-learning procedures.

Each run alternates a random-sampling phase (pick an unlabeled node
uniformly) with an aggressive-search phase (label the bisection point of
the shortest path joining two differently-labeled known nodes, removing
hyperedges whose labeled members disagree). Runs stop when the query
budget is reached or no useful query remains; the returned partition is
the remaining connected components.

Learners observe ground truth only through oracle queries. The true cut
set is passed in solely for run bookkeeping (recovery point, success
flag); no decision reads it.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass

import numpy as np

from .hypergraph import Hypergraph, remove_edges
from .oracles import PairwiseOracle, PointwiseOracle
from .traversal import UNREACHED, bfs_levels, component_labels, shortest_edge_sequence, _take_csr

_FAR = np.iinfo(np.int64).max


class EngineError(ValueError):
    """Raised for invalid run parameters."""


class _BudgetExhausted(Exception):
    """Internal signal: the ledger reached the budget; stop the run."""


@dataclass
class LabelList:
    """Observed labels; pairwise runs also track discovery-ordered seed sets."""

    entries: dict[int, int]
    seeds: list[list[int]] | None = None


@dataclass(frozen=True)
class RunResult:
    """Outcome of one run."""

    partition: tuple[tuple[int, ...], ...]
    removed_edges: tuple[int, ...]
    queries_used: int
    queries_until_recovery: int | None
    success: bool
    label_list: LabelList


class _RunState:
    def __init__(self, g: Hypergraph, true_cut) -> None:
        self.g = g
        self.adj = g.adjacency()
        self.alive = np.ones(g.m, dtype=bool)
        self.labels = np.full(g.n, -1, dtype=np.int64)
        self.by_class: dict[int, list[int]] = {}
        self.removed: list[int] = []
        self.true_cut = frozenset(true_cut)
        self.remaining_cut = len(self.true_cut)
        self.recovery_at: int | None = 0 if self.remaining_cut == 0 else None


def _require_budget(ledger, budget: int) -> None:
    if ledger.total >= budget:
        raise _BudgetExhausted


def _mark_removed(state: _RunState, eids, ledger) -> None:
    for eid in eids:
        state.alive[eid] = False
        state.removed.append(int(eid))
        if eid in state.true_cut:
            state.remaining_cut -= 1
    if state.remaining_cut == 0 and state.recovery_at is None:
        state.recovery_at = ledger.total


def _install_label(state: _RunState, v: int, c: int, ledger) -> None:
    """Record an observed label and drop newly inconsistent hyperedges."""
    state.labels[v] = c
    state.by_class.setdefault(c, []).append(v)
    adj = state.adj
    eids = adj.node_edges[adj.node_ptr[v] : adj.node_ptr[v + 1]].astype(np.int64)
    eids = eids[state.alive[eids]]
    if eids.size == 0:
        return
    members = _take_csr(adj.edge_ptr, adj.edge_members, eids)
    lab = state.labels[members]
    bad = (lab >= 0) & (lab != c)
    counts = adj.edge_ptr[eids + 1] - adj.edge_ptr[eids]
    starts = np.concatenate(([0], np.cumsum(counts)[:-1]))
    flags = np.logical_or.reduceat(bad, starts)
    doomed = eids[flags]
    if doomed.size:
        _mark_removed(state, doomed.tolist(), ledger)


def _bulk_remove_inconsistent(state: _RunState, ledger) -> None:
    """Drop every alive hyperedge whose labeled members disagree."""
    adj = state.adj
    if adj.m == 0:
        return
    lab = state.labels[adj.edge_members]
    hi = np.where(lab >= 0, lab, -1)
    lo = np.where(lab >= 0, lab, _FAR)
    starts = adj.edge_ptr[:-1]
    top = np.maximum.reduceat(hi, starts)
    bottom = np.minimum.reduceat(lo, starts)
    doomed = np.flatnonzero(state.alive & (top > bottom) & (bottom < _FAR))
    if doomed.size:
        _mark_removed(state, doomed.tolist(), ledger)


def _mssp_target(state: _RunState) -> int | None:
    """Unlabeled bisection node of the shortest differing-label path.

    The minimizing pair is the lexicographically least among minimum-length
    pairs; its path comes from the deterministic traversal. Absent when no
    differing-label path of length >= 2 exists.
    """
    classes = sorted(c for c, nodes in state.by_class.items() if nodes)
    if len(classes) < 2:
        return None
    labeled = np.flatnonzero(state.labels >= 0)
    dmaps: dict[int, np.ndarray] = {}
    for c in classes:
        nd, _ = bfs_levels(state.adj, np.asarray(state.by_class[c], dtype=np.int64), state.alive)
        dm = nd.astype(np.int64)
        dm[nd == UNREACHED] = _FAR
        dmaps[c] = dm
    best = _FAR
    for c in classes:
        others = labeled[state.labels[labeled] != c]
        if others.size:
            best = min(best, int(dmaps[c][others].min()))
    if best >= _FAR or best < 2:
        return None
    # every node of an optimal pair sees some other class at exactly `best`,
    # so the least such labeled node starts the lexicographically least pair
    s_star = -1
    for v in labeled.tolist():
        lv = int(state.labels[v])
        if any(int(dmaps[c][v]) == best for c in classes if c != lv):
            s_star = v
            break
    nd_t = None
    nd_s, _ = bfs_levels(state.adj, np.asarray([s_star], dtype=np.int64), state.alive)
    partners = labeled[state.labels[labeled] != state.labels[s_star]]
    partners = partners[nd_s[partners] == best]
    t_star = int(partners.min())
    nd_t, _ = bfs_levels(state.adj, np.asarray([t_star], dtype=np.int64), state.alive)
    found = shortest_edge_sequence(state.adj, s_star, t_star, state.alive, dist_to_v=nd_t)
    assert found is not None
    _, junctions = found
    target = _pick_junction(state, junctions)
    if target is not None:
        return target
    return _mssp_exhaustive(state)


def _pick_junction(state: _RunState, junctions: list[int]) -> int | None:
    """Bisection junction, shifted to the nearest unlabeled one if taken."""
    length = len(junctions) + 1
    mid = math.ceil((length - 1) / 2) - 1
    for off in range(length - 1):
        for idx in (mid - off, mid + off) if off else (mid,):
            if 0 <= idx < len(junctions) and state.labels[junctions[idx]] < 0:
                return junctions[idx]
    return None


def _mssp_exhaustive(state: _RunState) -> int | None:
    """Reference argmin over all differing-label pairs, skipping pairs whose
    path junctions are all labeled. Only reachable in states that were not
    produced by label-then-remove runs."""
    labeled = np.flatnonzero(state.labels >= 0).tolist()
    dist_cache: dict[int, np.ndarray] = {}

    def dist_from(v: int) -> np.ndarray:
        if v not in dist_cache:
            nd, _ = bfs_levels(state.adj, np.asarray([v], dtype=np.int64), state.alive)
            dist_cache[v] = nd
        return dist_cache[v]

    ranked: list[tuple[int, int, int]] = []
    for u, v in itertools.combinations(labeled, 2):
        if state.labels[u] == state.labels[v]:
            continue
        d = int(dist_from(u)[v])
        if d != UNREACHED:
            ranked.append((d, u, v))
    for d, u, v in sorted(ranked):
        if d < 2:
            return None
        found = shortest_edge_sequence(state.adj, u, v, state.alive, dist_to_v=dist_from(v))
        assert found is not None
        target = _pick_junction(state, found[1])
        if target is not None:
            return target
    return None


def next_bisection_target(g: Hypergraph, entries: dict[int, int]) -> int | None:
    """Public bisection-target query for an explicit label list."""
    state = _RunState(g, true_cut=())
    for v, c in entries.items():
        if not 0 <= v < g.n:
            raise EngineError(f"labeled node {v} outside [0, {g.n})")
        state.labels[v] = c
        state.by_class.setdefault(c, []).append(v)
    return _mssp_target(state)


def remove_inconsistent(g: Hypergraph, entries: dict[int, int]) -> tuple[Hypergraph, list[int]]:
    """Drop hyperedges whose labeled members disagree; pure-value variant."""
    doomed = []
    for eid, members in enumerate(g.edges):
        seen = {entries[v] for v in members if v in entries}
        if len(seen) >= 2:
            doomed.append(eid)
    reduced, _ = remove_edges(g, doomed)
    return reduced, doomed


def _assemble(state: _RunState, ledger, seeds: list[list[int]] | None) -> RunResult:
    comp = component_labels(state.adj, state.alive)
    blocks: list[list[int]] = [[] for _ in range(int(comp.max()) + 1)]
    for v, c in enumerate(comp):
        blocks[int(c)].append(v)
    entries = {int(v): int(state.labels[v]) for v in np.flatnonzero(state.labels >= 0)}
    return RunResult(
        partition=tuple(tuple(b) for b in blocks),
        removed_edges=tuple(state.removed),
        queries_used=ledger.total,
        queries_until_recovery=state.recovery_at,
        success=set(state.removed) == state.true_cut,
        label_list=LabelList(entries=entries, seeds=seeds),
    )


def _check_run_args(g: Hypergraph, oracle, budget: int) -> None:
    if budget < 1:
        raise EngineError(f"budget must be >= 1, got {budget}")
    if oracle.truth.n != g.n:
        raise EngineError("oracle truth domain does not match the hypergraph")
    if oracle.ledger.total != 0:
        raise EngineError("oracle already carries queries; use a fresh oracle per run")


def run_pointwise(g: Hypergraph, oracle: PointwiseOracle, budget: int, seed: int, true_cut) -> RunResult:
    """Pointwise-oracle run: query sampled nodes and bisection targets."""
    _check_run_args(g, oracle, budget)
    state = _RunState(g, true_cut)
    ledger = oracle.ledger
    rng = random.Random(seed)
    while ledger.total < budget:
        unlabeled = np.flatnonzero(state.labels < 0)
        if unlabeled.size == 0:
            break
        x = int(unlabeled[rng.randrange(unlabeled.size)])
        try:
            while True:
                _require_budget(ledger, budget)
                c = oracle.query_point(x)
                _install_label(state, x, c, ledger)
                nxt = _mssp_target(state)
                if nxt is None:
                    break
                x = nxt
        except _BudgetExhausted:
            break
    return _assemble(state, ledger, seeds=None)


def run_pairwise(g: Hypergraph, oracle: PairwiseOracle, budget: int, seed: int, true_cut) -> RunResult:
    """Noiseless pairwise run: match each selected node against one
    representative per discovered class, first match wins."""
    _check_run_args(g, oracle, budget)
    if oracle.flip_prob != 0.0:
        raise EngineError("noiseless pairwise run requires flip probability 0")
    state = _RunState(g, true_cut)
    ledger = oracle.ledger
    rng = random.Random(seed)
    seeds: list[list[int]] = []

    def classify(x: int) -> int:
        for cid, members in enumerate(seeds):
            _require_budget(ledger, budget)
            if oracle.query_pair(x, members[0]) == 1:
                members.append(x)
                return cid
        seeds.append([x])
        return len(seeds) - 1

    while ledger.total < budget:
        unlabeled = np.flatnonzero(state.labels < 0)
        if unlabeled.size == 0:
            break
        x = int(unlabeled[rng.randrange(unlabeled.size)])
        try:
            while True:
                c = classify(x)
                _install_label(state, x, c, ledger)
                nxt = _mssp_target(state)
                if nxt is None:
                    break
                x = nxt
        except _BudgetExhausted:
            break
    return _assemble(state, ledger, seeds=seeds)


def cluster_seed_sample(
    sample,
    oracle: PairwiseOracle,
    flip_prob: float,
    budget: int | None = None,
) -> list[list[int]]:
    """Partition sampled nodes by pairwise queries only.

    Noiseless: representative matching (first positive wins). Noisy:
    stream nodes into clusters by normalized majority over up to
    t = ceil(12 ln M / (1-2p)^2) members, merge clusters whose
    cross-comparisons vote same-class, then re-assign every node against
    the merged clusters. Previously observed answers are reused without
    re-purchase, so each distinct pair is charged at most once.
    """
    nodes = [int(v) for v in sample]
    m_count = len(nodes)
    if m_count < 2:
        raise EngineError(f"seed clustering needs at least 2 nodes, got {m_count}")
    if len(set(nodes)) != m_count:
        raise EngineError("seed sample contains duplicate nodes")
    ledger = oracle.ledger
    memo: dict[tuple[int, int], int] = {}

    def ask(u: int, w: int) -> int:
        key = (u, w) if u < w else (w, u)
        got = memo.get(key)
        if got is None:
            if budget is not None:
                _require_budget(ledger, budget)
            got = oracle.query_pair(u, w)
            memo[key] = got
        return got

    if flip_prob == 0.0:
        clusters: list[list[int]] = []
        for v in nodes:
            for members in clusters:
                if ask(v, members[0]) == 1:
                    members.append(v)
                    break
            else:
                clusters.append([v])
        return clusters

    t = math.ceil(12.0 * math.log(m_count) / (1.0 - 2.0 * flip_prob) ** 2)

    def ratio_against(v: int, members: list[int]) -> float:
        take = members[: min(t, len(members))]
        return sum(ask(v, u) for u in take) / len(take)

    clusters = []
    for v in nodes:
        best_cid, best_ratio = -1, -1.0
        for cid, members in enumerate(clusters):
            r = ratio_against(v, members)
            if r > best_ratio:
                best_cid, best_ratio = cid, r
        if best_cid >= 0 and best_ratio > 0.5:
            clusters[best_cid].append(v)
        else:
            clusters.append([v])

    def cross_ratio(a: list[int], b: list[int]) -> float:
        pairs = list(itertools.product(a, b))
        chosen = [pw for pw in pairs if (min(pw), max(pw)) in memo][:t]
        if len(chosen) < t:
            known = set(chosen)
            for pw in pairs:
                if len(chosen) == t:
                    break
                if pw not in known and (min(pw), max(pw)) not in memo:
                    chosen.append(pw)
        return sum(ask(u, w) for u, w in chosen) / len(chosen)

    merged = True
    while merged and len(clusters) > 1:
        merged = False
        i = 0
        while i < len(clusters):
            j = i + 1
            while j < len(clusters):
                if cross_ratio(clusters[i], clusters[j]) > 0.5:
                    clusters[i].extend(clusters[j])
                    del clusters[j]
                    merged = True
                else:
                    j += 1
            i += 1

    snapshot = [list(c) for c in clusters]
    position = {v: cid for cid, members in enumerate(snapshot) for v in members}
    assign: dict[int, int] = {}
    for v in nodes:
        best_cid, best_ratio = -1, -1.0
        for cid, members in enumerate(snapshot):
            others = [u for u in members if u != v]
            if not others:
                continue
            r = ratio_against(v, others)
            if r > best_ratio:
                best_cid, best_ratio = cid, r
        assign[v] = best_cid if best_cid >= 0 else position[v]
    rebuilt: list[list[int]] = [[] for _ in snapshot]
    for v in nodes:
        rebuilt[assign[v]].append(v)
    return [members for members in rebuilt if members]


def vote_classify(v: int, seeds: list[list[int]], oracle: PairwiseOracle, budget: int | None = None) -> int:
    """Class of v by normalized majority over every seed member.

    Queries v against all seed nodes; returns the class maximizing
    positives/|class|, ties to the smallest class id.
    """
    if not seeds or any(not members for members in seeds):
        raise EngineError("vote classification requires non-empty seed classes")
    if any(v in members for members in seeds):
        raise EngineError(f"node {v} is already a seed")
    ledger = oracle.ledger
    best_cid, best_ratio = -1, -1.0
    for cid, members in enumerate(seeds):
        positives = 0
        for u in members:
            if budget is not None:
                _require_budget(ledger, budget)
            positives += oracle.query_pair(v, u)
        ratio = positives / len(members)
        if ratio > best_ratio:
            best_cid, best_ratio = cid, ratio
    return best_cid


def run_pairwise_noisy(
    g: Hypergraph,
    oracle: PairwiseOracle,
    budget: int,
    seed_sample_size: int,
    seed: int,
    true_cut,
    skip_random_sampling: bool = False,
) -> RunResult:
    """Noisy pairwise run: cluster a uniform node sample into seed classes,
    then label bisection targets by normalized majority voting."""
    _check_run_args(g, oracle, budget)
    if seed_sample_size > g.n:
        raise EngineError(f"seed sample size {seed_sample_size} exceeds node count {g.n}")
    state = _RunState(g, true_cut)
    ledger = oracle.ledger
    rng = random.Random(seed)
    sample = rng.sample(range(g.n), seed_sample_size)
    try:
        seeds = cluster_seed_sample(sample, oracle, oracle.flip_prob, budget=budget)
    except _BudgetExhausted:
        return _assemble(state, ledger, seeds=None)
    for cid, members in enumerate(seeds):
        for v in members:
            state.labels[v] = cid
            state.by_class.setdefault(cid, []).append(v)
    _bulk_remove_inconsistent(state, ledger)
    try:
        if skip_random_sampling:
            while True:
                nxt = _mssp_target(state)
                if nxt is None:
                    break
                c = vote_classify(nxt, seeds, oracle, budget=budget)
                _install_label(state, nxt, c, ledger)
        else:
            while ledger.total < budget:
                unlabeled = np.flatnonzero(state.labels < 0)
                if unlabeled.size == 0:
                    break
                x = int(unlabeled[rng.randrange(unlabeled.size)])
                while True:
                    c = vote_classify(x, seeds, oracle, budget=budget)
                    _install_label(state, x, c, ledger)
                    nxt = _mssp_target(state)
                    if nxt is None:
                        break
                    x = nxt
    except _BudgetExhausted:
        pass
    return _assemble(state, ledger, seeds=seeds)
