"""Ground-truth cut structure of a labeled hypergraph.

Covers the cut set and boundary, per-class-pair cut components, the
directed distance between cut hyperedges (measured in the hypergraph with
all cut hyperedges removed), the threshold digraph over cut hyperedges,
the clusteredness radius (least threshold making every cut component
strongly connected), and the comparison against clique expansion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hypergraph import Hypergraph, clique_expansion
from .labels import LabelFunction
from .traversal import UNREACHED, bfs_levels, component_labels

# Exact strategies: the all-pairs path is quadratic in |C|; past the limit
# instances must satisfy the unit-metric fast-path premises or fail.
_GENERIC_CUT_LIMIT = 1500
_DENSE_COMP_LIMIT = 1200


class CutAnalysisError(ValueError):
    """Raised for invalid cut-analysis inputs or infeasible exact requests."""


@dataclass(frozen=True)
class CutProfile:
    """Cut hyperedges, boundary nodes, and class-pair cut components.

    components maps each unordered class pair (i, j), i < j, to the cut
    hyperedges meeting both classes; a hyperedge spanning t classes appears
    in C(t, 2) entries. edge_class_nodes caches each cut hyperedge's nodes
    grouped by class.
    """

    cut_edges: frozenset[int]
    boundary_nodes: frozenset[int]
    components: dict[tuple[int, int], frozenset[int]]
    m: int
    labels: LabelFunction
    edge_class_nodes: dict[int, dict[int, tuple[int, ...]]]


@dataclass(frozen=True)
class StructuralParams:
    """Instance parameters governing query budgets."""

    n: int
    k: int
    beta: float
    m: int
    kappa: float | None
    c_size: int
    boundary_size: int
    c_min: int
    t_components: int


def cut_profile(g: Hypergraph, f: LabelFunction) -> CutProfile:
    """Cut set, boundary, and components induced by a label function."""
    if f.n != g.n:
        raise CutAnalysisError(f"label domain has {f.n} nodes, hypergraph has {g.n}")
    cut: set[int] = set()
    boundary: set[int] = set()
    comps: dict[tuple[int, int], set[int]] = {}
    edge_class_nodes: dict[int, dict[int, tuple[int, ...]]] = {}
    for eid, members in enumerate(g.edges):
        split: dict[int, list[int]] = {}
        for v in members:
            split.setdefault(f.labels[v], []).append(v)
        if len(split) < 2:
            continue
        cut.add(eid)
        boundary.update(members)
        edge_class_nodes[eid] = {c: tuple(nodes) for c, nodes in split.items()}
        classes = sorted(split)
        for a in range(len(classes)):
            for b in range(a + 1, len(classes)):
                comps.setdefault((classes[a], classes[b]), set()).add(eid)
    components = {pair: frozenset(es) for pair, es in sorted(comps.items())}
    return CutProfile(
        cut_edges=frozenset(cut),
        boundary_nodes=frozenset(boundary),
        components=components,
        m=len(components),
        labels=f,
        edge_class_nodes=edge_class_nodes,
    )


def balancedness(f: LabelFunction, n: int) -> float:
    """Least class size divided by n (float division)."""
    if n != f.n:
        raise CutAnalysisError(f"node count {n} does not match label domain {f.n}")
    sizes = [0] * f.k
    for c in f.labels:
        sizes[c] += 1
    return min(sizes) / n


def _noncut_mask(g: Hypergraph, profile: CutProfile) -> np.ndarray:
    alive = np.ones(g.m, dtype=bool)
    for eid in profile.cut_edges:
        alive[eid] = False
    return alive


def _check_cut_edge(profile: CutProfile, eid: int) -> None:
    if eid not in profile.cut_edges:
        raise CutAnalysisError(f"hyperedge {eid} is not a cut hyperedge")


def cut_edge_distance(g: Hypergraph, profile: CutProfile, e1: int, e2: int) -> float:
    """Directed distance between cut hyperedges.

    With all cut hyperedges removed, takes the largest over class pairs
    shared by e1 and e2 of: (worst distance from e1's class-i nodes to
    e2's class-i side) + (same for class j) + 1. Infinite when the edges
    share no cut component or an anchor set is unreachable.
    """
    _check_cut_edge(profile, e1)
    _check_cut_edge(profile, e2)
    shared = [pair for pair, members in profile.components.items() if e1 in members and e2 in members]
    if not shared:
        return math.inf
    adj = g.adjacency()
    alive = _noncut_mask(g, profile)
    omega1 = profile.edge_class_nodes[e1]
    omega2 = profile.edge_class_nodes[e2]

    def side_term(cls: int) -> float:
        nd, _ = bfs_levels(adj, np.asarray(omega2[cls], dtype=np.int64), alive)
        vals = nd[np.asarray(omega1[cls], dtype=np.int64)]
        if (vals == UNREACHED).any():
            return math.inf
        return float(vals.max())

    best = -math.inf
    for ci, cj in shared:
        best = max(best, side_term(ci) + side_term(cj) + 1.0)
    return best


def _delta_matrix(g: Hypergraph, profile: CutProfile) -> tuple[list[int], dict[int, int], np.ndarray]:
    """All-pairs directed distances over cut hyperedges (inf = no arc ever)."""
    cut = sorted(profile.cut_edges)
    pos = {e: i for i, e in enumerate(cut)}
    adj = g.adjacency()
    alive = _noncut_mask(g, profile)
    rows: dict[int, np.ndarray] = {}
    for v in sorted(profile.boundary_nodes):
        nd, _ = bfs_levels(adj, np.asarray([v], dtype=np.int64), alive)
        row = nd.astype(np.float64)
        row[nd == UNREACHED] = np.inf
        rows[v] = row
    setmap: dict[tuple[int, int], np.ndarray] = {}
    for e in cut:
        for c, nodes in profile.edge_class_nodes[e].items():
            setmap[(e, c)] = np.minimum.reduce([rows[v] for v in nodes])
    acc = np.full((len(cut), len(cut)), -np.inf)
    for (ci, cj), members in sorted(profile.components.items()):
        ms = sorted(members)
        idx = np.asarray([pos[e] for e in ms], dtype=np.int64)

        def padded(cls: int) -> tuple[np.ndarray, np.ndarray]:
            width = max(len(profile.edge_class_nodes[e][cls]) for e in ms)
            arr = np.zeros((len(ms), width), dtype=np.int64)
            mask = np.zeros((len(ms), width), dtype=bool)
            for r, e in enumerate(ms):
                nodes = profile.edge_class_nodes[e][cls]
                arr[r, : len(nodes)] = nodes
                mask[r, : len(nodes)] = True
            return arr, mask

        mi, maski = padded(ci)
        mj, maskj = padded(cj)
        for e2 in ms:
            a = np.where(maski, setmap[(e2, ci)][mi], -np.inf).max(axis=1)
            b = np.where(maskj, setmap[(e2, cj)][mj], -np.inf).max(axis=1)
            col = a + b + 1.0
            np.maximum.at(acc, (idx, pos[e2]), col)
    acc[np.isneginf(acc)] = np.inf
    return cut, pos, acc


def cut_dual_graph(g: Hypergraph, profile: CutProfile, radius: float) -> dict[int, tuple[int, ...]]:
    """Arc lists of the threshold digraph on cut hyperedges at the radius."""
    if radius < 0:
        raise CutAnalysisError(f"radius must be >= 0, got {radius}")
    if len(profile.cut_edges) > _GENERIC_CUT_LIMIT:
        raise CutAnalysisError("cut set too large for the all-pairs dual graph")
    cut, pos, dmat = _delta_matrix(g, profile)
    arcs: dict[int, tuple[int, ...]] = {}
    for e in cut:
        row = dmat[pos[e]]
        arcs[e] = tuple(cut[i] for i in np.flatnonzero(row <= radius))
    return arcs


def _strongly_connected_dense(adjacency: np.ndarray) -> bool:
    size = adjacency.shape[0]
    for mat in (adjacency, adjacency.T):
        reach = np.zeros(size, dtype=bool)
        reach[0] = True
        frontier = reach.copy()
        while True:
            new = mat[frontier].any(axis=0) & ~reach
            if not new.any():
                break
            reach |= new
            frontier = new
        if not reach.all():
            return False
    return True


def _strongly_connected_sparse(nodes: list[int], arcs: dict[int, list[int]]) -> bool:
    back: dict[int, list[int]] = {v: [] for v in nodes}
    for src, dsts in arcs.items():
        for dst in dsts:
            back[dst].append(src)
    for table in (arcs, back):
        seen = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            cur = stack.pop()
            for nxt in table[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        if len(seen) != len(nodes):
            return False
    return True


def _kappa_generic(g: Hypergraph, profile: CutProfile, multi) -> float:
    _, pos, dmat = _delta_matrix(g, profile)
    comp_idx = [np.asarray(sorted(pos[e] for e in ms), dtype=np.int64) for _, ms in multi]
    finite: list[np.ndarray] = []
    for idx in comp_idx:
        block = dmat[np.ix_(idx, idx)]
        finite.append(block[np.isfinite(block)])
    values = np.unique(np.concatenate(finite)) if finite else np.zeros(0)

    def all_connected(r: float) -> bool:
        return all(_strongly_connected_dense(dmat[np.ix_(idx, idx)] <= r) for idx in comp_idx)

    lo, hi = 0, len(values) - 1
    if len(values) == 0 or not all_connected(float(values[hi])):
        return math.inf
    while lo < hi:
        mid = (lo + hi) // 2
        if all_connected(float(values[mid])):
            hi = mid
        else:
            lo = mid + 1
    return float(values[lo])


def _cooccurrence_masks(g: Hypergraph, profile: CutProfile) -> list[int]:
    cooc = [0] * g.n
    for eid, members in enumerate(g.edges):
        if eid in profile.cut_edges:
            continue
        bits = 0
        for v in members:
            bits |= 1 << v
        for v in members:
            cooc[v] |= bits
    return cooc


def _unit_delta(omega: dict[int, dict[int, tuple[int, ...]]], e1: int, e2: int) -> float:
    """Directed distance when all same-class anchor distances equal 1."""
    o1, o2 = omega[e1], omega[e2]
    common = sorted(set(o1) & set(o2))
    if len(common) < 2:
        return math.inf
    worst = 0
    for a in range(len(common)):
        for b in range(a + 1, len(common)):
            p, q = common[a], common[b]
            term = 3 - (set(o1[p]) <= set(o2[p])) - (set(o1[q]) <= set(o2[q]))
            if term > worst:
                worst = term
    return float(worst)


def _nonempty_subsets(nodes: tuple[int, ...]) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []
    size = len(nodes)
    for mask in range(1, 1 << size):
        out.append(tuple(nodes[i] for i in range(size) if mask >> i & 1))
    return out


def _fast_comp_kappa(omega, ms: list[int], ci: int, cj: int, spans: dict[int, tuple[int, ...]]) -> int:
    side = {e: (omega[e][ci], omega[e][cj]) for e in ms}

    # threshold 1: arcs need both comp-class sides nested inside the
    # target's, so the source's (i, j)-part equals a subset pair of the
    # target's sides; remaining shared classes are verified exactly
    part_map: dict[tuple[tuple[int, ...], tuple[int, ...]], list[int]] = {}
    for e in ms:
        part_map.setdefault(side[e], []).append(e)
    arcs1: dict[int, list[int]] = {e: [] for e in ms}
    found1 = False
    for e2 in ms:
        si, sj = side[e2]
        for sub_i in _nonempty_subsets(si):
            for sub_j in _nonempty_subsets(sj):
                for e1 in part_map.get((sub_i, sub_j), ()):
                    if e1 == e2:
                        continue
                    # equal three-class spans would also need equal third
                    # coordinates, i.e. identical edges
                    if spans[e1] == spans[e2] and len(spans[e1]) == 3:
                        continue
                    arcs1[e1].append(e2)
                    found1 = True
    if found1 and _strongly_connected_sparse(ms, arcs1):
        return 1

    # threshold 2: union-find over key groups whose members provably reach
    # each other through mutual arcs (edge sizes <= 3 make these exhaustive
    # up to the dense fallback)
    parent = {e: e for e in ms}

    def find(e: int) -> int:
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    groups: dict[tuple, list[int]] = {}
    for e in ms:
        si, sj = side[e]
        for u in si:
            for w in sj:
                groups.setdefault(("x", u, w), []).append(e)
        if len(spans[e]) == 2:
            if len(si) >= 2:
                groups.setdefault(("side", ci, si), []).append(e)
            if len(sj) >= 2:
                groups.setdefault(("side", cj, sj), []).append(e)
        if len(si) == 1:
            groups.setdefault(("coord", ci, si[0]), []).append(e)
        if len(sj) == 1:
            groups.setdefault(("coord", cj, sj[0]), []).append(e)
    for key, es in sorted(groups.items()):
        if len(es) < 2:
            continue
        if key[0] == "coord":
            # same-third-class triples in one coord group lack mutual arcs
            # unless a pair edge or a different-third triple bridges them
            thirds = {spans[e] for e in es if len(spans[e]) == 3}
            has_bridge = any(len(spans[e]) == 2 for e in es) or len(thirds) >= 2
            if not has_bridge:
                continue
        first = es[0]
        for other in es[1:]:
            union(first, other)
    if len({find(e) for e in ms}) == 1:
        return 2

    if len(ms) <= _DENSE_COMP_LIMIT:
        arcs2 = {e: [f for f in ms if _unit_delta(omega, e, f) <= 2] for e in ms}
        return 2 if _strongly_connected_sparse(ms, arcs2) else 3
    raise CutAnalysisError("clusteredness radius not certifiable at this scale")


def _kappa_fast(g: Hypergraph, profile: CutProfile, multi) -> int | None:
    """Exact radius under unit-metric premises; None when premises fail.

    Premises: every involved cut hyperedge has size <= 3, and within each
    class every pair of involved nodes shares a surviving (non-cut)
    hyperedge, making all finite anchor distances exactly 1 and bounding
    directed distances by 3.
    """
    involved: set[int] = set()
    for _, ms in multi:
        involved.update(ms)
    omega = profile.edge_class_nodes
    if any(len(g.edges[e]) > 3 for e in involved):
        return None
    class_nodes: dict[int, set[int]] = {}
    for e in involved:
        for c, nodes in omega[e].items():
            class_nodes.setdefault(c, set()).update(nodes)
    cooc = _cooccurrence_masks(g, profile)
    for nodes in class_nodes.values():
        bits = 0
        for v in nodes:
            bits |= 1 << v
        for v in nodes:
            if bits & ~(cooc[v] | (1 << v)):
                return None
    spans = {e: tuple(sorted(omega[e])) for e in involved}
    worst = 1
    for (ci, cj), members in multi:
        worst = max(worst, _fast_comp_kappa(omega, sorted(members), ci, cj, spans))
        if worst == 3:
            break
    return worst


def clusteredness_radius(g: Hypergraph, profile: CutProfile, method: str = "auto") -> float | None:
    """Least threshold making every cut component strongly connected.

    None when the cut set is empty; 1 when every component is a singleton;
    math.inf when no finite threshold works. method forces a strategy for
    cross-validation: "generic" (all-pairs), "fast" (unit-metric), "auto".
    """
    if method not in ("auto", "generic", "fast"):
        raise CutAnalysisError(f"unknown method {method!r}")
    if not profile.cut_edges:
        return None
    multi = [(pair, members) for pair, members in sorted(profile.components.items()) if len(members) >= 2]
    if not multi:
        return 1
    if method == "generic":
        return _kappa_generic(g, profile, multi)
    if method == "fast":
        fast = _kappa_fast(g, profile, multi)
        if fast is None:
            raise CutAnalysisError("fast-path premises not met")
        return fast
    if len(profile.cut_edges) <= _GENERIC_CUT_LIMIT:
        return _kappa_generic(g, profile, multi)
    fast = _kappa_fast(g, profile, multi)
    if fast is None:
        raise CutAnalysisError(
            f"cut set of size {len(profile.cut_edges)} exceeds the exact all-pairs limit "
            "and does not satisfy the unit-metric fast-path premises"
        )
    return fast


def structural_params(
    g: Hypergraph,
    f: LabelFunction,
    profile: CutProfile | None = None,
    with_radius: bool = True,
) -> StructuralParams:
    """Bundle of the budget-governing parameters for a labeled hypergraph."""
    if profile is None:
        profile = cut_profile(g, f)
    beta = balancedness(f, g.n)
    kappa = clusteredness_radius(g, profile) if (with_radius and profile.cut_edges) else None
    c_size = len(profile.cut_edges)
    boundary_size = len(profile.boundary_nodes)
    labels = component_labels(g.adjacency(), _noncut_mask(g, profile))
    return StructuralParams(
        n=g.n,
        k=f.k,
        beta=beta,
        m=profile.m,
        kappa=kappa,
        c_size=c_size,
        boundary_size=boundary_size,
        c_min=min(c_size, boundary_size),
        t_components=int(labels.max()) + 1,
    )


@dataclass(frozen=True)
class ExpansionComparison:
    """Structural parameters of a hypergraph vs its clique expansion."""

    base: StructuralParams
    expanded: StructuralParams
    beta_equal: bool
    m_equal: bool
    kappa_equal: bool
    boundary_equal: bool
    min_cut_le: bool

    @property
    def all_hold(self) -> bool:
        return self.beta_equal and self.m_equal and self.kappa_equal and self.boundary_equal and self.min_cut_le


def compare_with_expansion(g: Hypergraph, f: LabelFunction) -> ExpansionComparison:
    """Check which structural parameters clique expansion preserves."""
    base = structural_params(g, f)
    expanded = structural_params(clique_expansion(g), f)
    return ExpansionComparison(
        base=base,
        expanded=expanded,
        beta_equal=base.beta == expanded.beta,
        m_equal=base.m == expanded.m,
        kappa_equal=base.kappa == expanded.kappa,
        boundary_equal=base.boundary_size == expanded.boundary_size,
        min_cut_le=base.c_min <= expanded.c_min,
    )
