"""Labeled-hypergraph generators and instance file loaders.

The block-model generator enumerates candidate node subsets of the fixed
edge size in lexicographic order and draws one uniform variate per
candidate from a seeded stream, so output is reproducible byte for byte.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .hypergraph import Hypergraph, build
from .labels import LabelFunction, load_labels  # noqa: F401  (re-exported loader)


class DataGenError(ValueError):
    """Raised for invalid generator parameters or malformed input files."""


@dataclass(frozen=True)
class BlockModelParams:
    """Equal-block random hypergraph: within-class subsets of size
    edge_size appear with probability q_in, class-crossing ones with q_out."""

    n: int
    k: int
    q_in: float
    q_out: float
    edge_size: int = 3
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n < 1 or self.k < 1:
            raise DataGenError(f"need n >= 1 and k >= 1, got n={self.n}, k={self.k}")
        if self.n % self.k != 0:
            raise DataGenError(f"n must be divisible by k for equal classes, got n={self.n}, k={self.k}")
        if self.edge_size < 2:
            raise DataGenError(f"edge size must be >= 2, got {self.edge_size}")
        if self.n // self.k < self.edge_size:
            raise DataGenError("classes too small to hold a within-class hyperedge")
        if not (0.0 <= self.q_out <= self.q_in <= 1.0):
            raise DataGenError(f"need 0 <= q_out <= q_in <= 1, got q_in={self.q_in}, q_out={self.q_out}")


def block_model(params: BlockModelParams) -> tuple[Hypergraph, LabelFunction]:
    """Sample a labeled hypergraph; classes are contiguous equal blocks."""
    n, k, d = params.n, params.k, params.edge_size
    block = n // k
    classes = [v // block for v in range(n)]
    rng = np.random.default_rng(params.seed)
    count = _n_choose(n, d)
    draws = rng.random(count)
    edges: list[tuple[int, ...]] = []
    for pos, combo in enumerate(itertools.combinations(range(n), d)):
        first = classes[combo[0]]
        within = all(classes[v] == first for v in combo[1:])
        prob = params.q_in if within else params.q_out
        if draws[pos] < prob:
            edges.append(combo)
    labels = LabelFunction(tuple(classes), k)
    return build(n, edges), labels


def _n_choose(n: int, d: int) -> int:
    out = 1
    for i in range(d):
        out = out * (n - i) // (i + 1)
    return out


@dataclass(frozen=True)
class FeatureMatrix:
    """Row-per-point numeric features under the Euclidean metric."""

    rows: np.ndarray

    def __post_init__(self) -> None:
        rows = np.asarray(self.rows, dtype=np.float64)
        if rows.ndim != 2 or rows.shape[0] < 1:
            raise DataGenError("feature matrix must be 2-D with at least one row")
        if not np.isfinite(rows).all():
            raise DataGenError("feature matrix has non-finite entries")
        object.__setattr__(self, "rows", rows)

    @property
    def count(self) -> int:
        return int(self.rows.shape[0])


def nearest_neighbor_hypergraph(features: FeatureMatrix, neighbors: int = 2) -> Hypergraph:
    """One hyperedge per point joining it with its nearest rows.

    Distance ties and duplicate points resolve toward the smaller index;
    identical hyperedges are deduplicated.
    """
    n = features.count
    if neighbors < 1:
        raise DataGenError(f"neighbor count must be >= 1, got {neighbors}")
    if n - 1 < neighbors:
        raise DataGenError(f"{n} points cannot supply {neighbors} distinct neighbors each")
    x = features.rows
    edges: list[list[int]] = []
    for i in range(n):
        diff = x - x[i]
        dist = (diff * diff).sum(axis=1)
        dist[i] = np.inf
        order = np.argsort(dist, kind="stable")
        edges.append(sorted({i, *order[:neighbors].tolist()}))
    unique: list[list[int]] = []
    seen: set[tuple[int, ...]] = set()
    for members in edges:
        key = tuple(members)
        if key not in seen:
            seen.add(key)
            unique.append(members)
    return build(n, unique)


def read_features_text(text: str) -> FeatureMatrix:
    """Parse comma-separated numeric rows, one point per line."""
    rows: list[list[float]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            row = [float(tok) for tok in line.split(",")]
        except ValueError as exc:
            raise DataGenError(f"line {lineno}: non-numeric field in {line!r}") from exc
        if rows and len(row) != len(rows[0]):
            raise DataGenError(f"line {lineno}: expected {len(rows[0])} columns, got {len(row)}")
        rows.append(row)
    if not rows:
        raise DataGenError("empty feature file")
    return FeatureMatrix(np.asarray(rows, dtype=np.float64))


def load_features(path) -> FeatureMatrix:
    with open(path, "r", encoding="ascii") as fh:
        return read_features_text(fh.read())
