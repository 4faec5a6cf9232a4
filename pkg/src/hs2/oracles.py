"""Simulated label oracles with exact query accounting.

Learners observe ground truth only through query_point / query_pair; the
ledger charges every call, including repeats. Pairwise noise is either
re-drawn per call ("fresh") or fixed per unordered pair ("persistent",
the default and the stricter model).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .labels import LabelFunction


class OracleError(ValueError):
    """Raised for invalid oracle queries or parameters."""


@dataclass
class QueryLedger:
    """Monotone counters (and optional trace) of every oracle call."""

    point_count: int = 0
    pair_count: int = 0
    trace: list[tuple[int, str, tuple[int, ...], int]] | None = None

    @property
    def total(self) -> int:
        return self.point_count + self.pair_count

    def record(self, kind: str, args: tuple[int, ...], answer: int) -> None:
        if kind == "point":
            self.point_count += 1
        else:
            self.pair_count += 1
        if self.trace is not None:
            self.trace.append((self.total - 1, kind, args, answer))


def format_trace(ledger: QueryLedger) -> str:
    """One line per query: `tick kind args answer`."""
    if ledger.trace is None:
        raise OracleError("tracing was not enabled on this ledger")
    lines = [f"{tick} {kind} {' '.join(str(a) for a in args)} {answer}" for tick, kind, args, answer in ledger.trace]
    return "\n".join(lines) + ("\n" if lines else "")


@dataclass
class PointwiseOracle:
    """Returns the true class of a queried node, charging one point query."""

    truth: LabelFunction
    ledger: QueryLedger = field(default_factory=QueryLedger)

    def query_point(self, v: int) -> int:
        if not 0 <= v < self.truth.n:
            raise OracleError(f"node id {v} outside [0, {self.truth.n})")
        answer = self.truth.labels[v]
        self.ledger.record("point", (v,), answer)
        return answer


@dataclass
class PairwiseOracle:
    """Answers whether two nodes share a class, flipped with probability p.

    p == 0 makes the oracle noiseless. Persistent mode samples each
    unordered pair's flip once and caches it, so repeats are consistent
    and symmetric; fresh mode flips independently per call. Every call is
    charged.
    """

    truth: LabelFunction
    flip_prob: float = 0.0
    noise_mode: str = "persistent"
    rng_seed: int = 0
    ledger: QueryLedger = field(default_factory=QueryLedger)
    _rng: random.Random = field(init=False, repr=False)
    _answer_cache: dict[tuple[int, int], int] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self) -> None:
        if not 0.0 <= self.flip_prob < 0.5:
            raise OracleError(f"flip probability must lie in [0, 0.5), got {self.flip_prob}")
        if self.noise_mode not in ("fresh", "persistent"):
            raise OracleError(f"noise mode must be 'fresh' or 'persistent', got {self.noise_mode!r}")
        self._rng = random.Random(self.rng_seed)

    def query_pair(self, u: int, v: int) -> int:
        n = self.truth.n
        if not (0 <= u < n and 0 <= v < n):
            raise OracleError(f"node ids ({u}, {v}) outside [0, {n})")
        if u == v:
            raise OracleError("pair query requires two distinct nodes")
        clean = 1 if self.truth.labels[u] == self.truth.labels[v] else 0
        if self.flip_prob == 0.0:
            answer = clean
        elif self.noise_mode == "fresh":
            answer = clean ^ (1 if self._rng.random() < self.flip_prob else 0)
        else:
            key = (u, v) if u < v else (v, u)
            answer = self._answer_cache.get(key, -1)
            if answer < 0:
                answer = clean ^ (1 if self._rng.random() < self.flip_prob else 0)
                self._answer_cache[key] = answer
        self.ledger.record("pair", (u, v), answer)
        return answer


def ledger_snapshot(oracle) -> tuple[int, int]:
    """Pure read of (point_count, pair_count)."""
    return (oracle.ledger.point_count, oracle.ledger.pair_count)


def enable_tracing(oracle) -> None:
    if oracle.ledger.trace is None:
        oracle.ledger.trace = []
