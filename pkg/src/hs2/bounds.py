"""Closed-form query budgets and the information-theoretic helpers behind
the noisy-oracle seed-size requirement.

Logarithm conventions: the witness term is a ratio of logarithms (base
cancels; natural log used); binary logs appear exactly where the budget
formulas are stated with log2; every remaining log is natural.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


class BoundsError(ValueError):
    """Raised for parameter values outside a formula's domain."""


@dataclass(frozen=True)
class BoundInputs:
    """Structural parameters plus confidence/noise knobs."""

    n: int
    k: int
    beta: float
    m: int
    kappa: float
    c_min: int
    delta: float
    p: float = 0.0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise BoundsError(f"need n >= 1, got {self.n}")
        if not 0.0 < self.beta <= 1.0 / self.k:
            raise BoundsError(f"balancedness must lie in (0, 1/k], got {self.beta} with k={self.k}")
        if self.m < 0 or self.c_min < 0:
            raise BoundsError("m and c_min must be nonnegative")
        if self.kappa < 1:
            raise BoundsError(f"clusteredness radius must be >= 1, got {self.kappa}")
        if not 0.0 < self.delta < 1.0:
            raise BoundsError(f"confidence delta must lie in (0, 1), got {self.delta}")
        if not 0.0 <= self.p < 0.5:
            raise BoundsError(f"flip probability must lie in [0, 0.5), got {self.p}")


def witness_sample_bound(beta: float, delta: float) -> float:
    """Uniform sample size guaranteeing a node from every class w.p. >= 1-delta."""
    if not 0.0 < beta < 1.0:
        raise BoundsError(f"balancedness must lie in (0, 1), got {beta}")
    if not 0.0 < delta <= 1.0:
        raise BoundsError(f"delta must lie in (0, 1], got {delta}")
    return math.log(1.0 / (beta * delta)) / math.log(1.0 / (1.0 - beta))


def point_query_bound(inputs: BoundInputs) -> float:
    """Pointwise budget: witness term + per-component search + bisection term."""
    kappa = inputs.kappa
    if not math.isfinite(kappa):
        raise BoundsError("clusteredness radius must be finite for a budget")
    if kappa > inputs.n:
        raise BoundsError(f"clusteredness radius {kappa} exceeds node count {inputs.n}")
    witness = witness_sample_bound(inputs.beta, inputs.delta)
    search = inputs.m * math.ceil(math.log2(inputs.n) - math.log2(kappa))
    bisect = inputs.c_min * (math.ceil(math.log2(kappa)) + 1)
    return witness + search + bisect


def pair_query_bound(inputs: BoundInputs) -> float:
    """Noiseless pairwise budget: k times the pointwise budget."""
    return inputs.k * point_query_bound(inputs)


def search_phase_bound(inputs: BoundInputs) -> float:
    """Budget without the random-sampling witness term."""
    return point_query_bound(inputs) - witness_sample_bound(inputs.beta, inputs.delta)


def bernoulli_kl(x: float, y: float) -> float:
    """KL divergence (nats) between Bernoulli(x) and Bernoulli(y)."""
    if not 0.0 <= x <= 1.0 or not 0.0 <= y <= 1.0:
        raise BoundsError(f"Bernoulli parameters must lie in [0, 1], got ({x}, {y})")

    def part(a: float, b: float) -> float:
        if a == 0.0:
            return 0.0
        if b == 0.0:
            return math.inf
        return a * math.log(a / b)

    return part(x, y) + part(1.0 - x, 1.0 - y)


def kl_lower_bound(x: float, y: float) -> float:
    """(y-x)^2 / (2 min(x, y)); never exceeds bernoulli_kl(x, y)."""
    if not 0.0 < x < 1.0 or not 0.0 < y < 1.0:
        raise BoundsError(f"parameters must lie in (0, 1), got ({x}, {y})")
    return (y - x) ** 2 / (2.0 * min(x, y))


def seed_size_thresholds(k: int, beta: float, p: float, delta: float, point_bound_quarter: float) -> tuple[float, float, float, float]:
    """Least admissible M per constraint: (growth, class-coverage, phase-one
    confidence, vote-union). The growth entry is the least integer M >= 3
    with M/ln M above its ratio bound; the rest are direct thresholds."""
    if not 0.0 < p < 0.5:
        raise BoundsError(f"noisy seed sizing needs p in (0, 0.5), got {p}")
    if not 0.0 < delta < 1.0:
        raise BoundsError(f"delta must lie in (0, 1), got {delta}")
    if not 0.0 < beta <= 1.0 / k:
        raise BoundsError(f"balancedness must lie in (0, 1/k], got {beta}")
    ratio = 128.0 * k / (beta * (2.0 * p - 1.0) ** 4)

    def growth_ok(m: int) -> bool:
        return m / math.log(m) >= ratio

    lo, hi = 3, 3
    while not growth_ok(hi):
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if growth_ok(mid):
            hi = mid
        else:
            lo = mid + 1
    coverage = (12.0 / beta) * math.log(4.0 * k / delta)
    confidence = 8.0 / delta
    if k == 1:
        vote = 0.0
    else:
        vote = (2.0 / (beta * bernoulli_kl(0.5, p))) * math.log(8.0 * (k - 1) * point_bound_quarter / delta)
    return (float(lo), coverage, confidence, vote)


def min_seed_sample_size(k: int, beta: float, p: float, delta: float, point_bound_quarter: float) -> int:
    """Smallest integer M >= 3 meeting all four seed-size constraints."""
    thresholds = seed_size_thresholds(k, beta, p, delta, point_bound_quarter)
    m = max(3, *(math.ceil(t) for t in thresholds))
    while m / math.log(m) < 128.0 * k / (beta * (2.0 * p - 1.0) ** 4):
        m += 1
    return m


def noisy_query_bound(inputs: BoundInputs, m_seed: int, point_bound_quarter: float) -> float:
    """Noisy pairwise budget: per-target voting cost plus seed clustering cost."""
    if m_seed < 2:
        raise BoundsError(f"seed sample size must be >= 2, got {m_seed}")
    if not 0.0 < inputs.p < 0.5:
        raise BoundsError(f"noisy budget needs p in (0, 0.5), got {inputs.p}")
    clustering = 128.0 * m_seed * inputs.k**2 * math.log(m_seed) / (2.0 * inputs.p - 1.0) ** 4
    return point_bound_quarter * m_seed + clustering


@dataclass(frozen=True)
class BoundReport:
    """All budgets for one instance, with the inputs echoed."""

    inputs: BoundInputs
    witness_term: float
    point_bound: float
    pair_bound: float
    search_bound: float
    min_seed_size: int | None = None
    noisy_bound: float | None = None
    seed_thresholds: tuple[float, float, float, float] | None = None


def bound_report(inputs: BoundInputs, noisy: bool = False, m_seed: int | None = None) -> BoundReport:
    """Evaluate every budget; noisy mode adds seed sizing at delta/4."""
    witness = witness_sample_bound(inputs.beta, inputs.delta)
    point = point_query_bound(inputs)
    report = BoundReport(
        inputs=inputs,
        witness_term=witness,
        point_bound=point,
        pair_bound=inputs.k * point,
        search_bound=point - witness,
    )
    if not noisy:
        return report
    quarter = BoundInputs(
        n=inputs.n,
        k=inputs.k,
        beta=inputs.beta,
        m=inputs.m,
        kappa=inputs.kappa,
        c_min=inputs.c_min,
        delta=inputs.delta / 4.0,
        p=inputs.p,
    )
    point_quarter = point_query_bound(quarter)
    thresholds = seed_size_thresholds(inputs.k, inputs.beta, inputs.p, inputs.delta, point_quarter)
    m_value = m_seed if m_seed is not None else min_seed_sample_size(inputs.k, inputs.beta, inputs.p, inputs.delta, point_quarter)
    return BoundReport(
        inputs=inputs,
        witness_term=witness,
        point_bound=point,
        pair_bound=inputs.k * point,
        search_bound=point - witness,
        min_seed_size=m_value,
        noisy_bound=noisy_query_bound(inputs, m_value, point_quarter),
        seed_thresholds=thresholds,
    )
