"""Seeded trial sweeps with deterministic results tables.

Trial i runs with seed master_seed XOR i; workers only change scheduling,
never results, so tables are byte-identical for any worker count. Wall
times are excluded from the table (they go to a timing sidecar and the
printed summary).
"""

from __future__ import annotations

import dataclasses
import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .bounds import BoundInputs, min_seed_sample_size, noisy_query_bound, pair_query_bound, point_query_bound
from .cuts import CutAnalysisError, cut_profile, structural_params
from .datagen import BlockModelParams, block_model
from .engine import run_pairwise, run_pairwise_noisy, run_pointwise
from .hypergraph import clique_expansion, load_hypergraph
from .labels import load_labels
from .oracles import PairwiseOracle, PointwiseOracle, enable_tracing, format_trace

ALGORITHMS = ("hs2-point", "hs2-pair", "hs2-pair-noisy", "ce-s2-point", "ce-s2-pair", "ce-s2-pair-noisy")
RESULTS_VERSION = "hs2-results-v1"
RESULTS_HEADER = (
    "algorithm,n,k,trial,seed,budget,queries_used,queries_until_recovery,"
    "success,beta,m,kappa,c_size,boundary_size"
)

_ORACLE_SALT = 0x9E3779B97F4A7C15
_ENGINE_SALT = 0xC2B2AE3D27D4EB4F


class ExperimentError(ValueError):
    """Raised for inconsistent experiment configurations."""


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment: algorithm, instance source, budget policy, trials."""

    algorithm: str
    trials: int
    master_seed: int
    workers: int = 1
    hypergraph_path: str | None = None
    labels_path: str | None = None
    generator: BlockModelParams | None = None
    fix_instance: bool = False
    budget: str = "auto:q_star"
    delta: float = 0.1
    p: float = 0.0
    seed_sample_size: int | None = None
    skip_random_sampling: bool = False
    trace_prefix: str | None = None

    def __post_init__(self) -> None:
        if self.algorithm not in ALGORITHMS:
            raise ExperimentError(f"unknown algorithm {self.algorithm!r}; choose from {ALGORITHMS}")
        if self.trials < 1:
            raise ExperimentError(f"trials must be >= 1, got {self.trials}")
        if self.workers < 1:
            raise ExperimentError(f"workers must be >= 1, got {self.workers}")
        file_source = self.hypergraph_path is not None and self.labels_path is not None
        if file_source == (self.generator is not None):
            raise ExperimentError("provide exactly one instance source: files or generator parameters")
        if self.budget.startswith("auto:"):
            if self.budget not in ("auto:q_star", "auto:q_star_pair", "auto:noisy"):
                raise ExperimentError(f"unknown budget mode {self.budget!r}")
        else:
            try:
                value = int(self.budget)
            except ValueError as exc:
                raise ExperimentError(f"budget must be an integer or auto:<mode>, got {self.budget!r}") from exc
            if value < 1:
                raise ExperimentError(f"explicit budget must be >= 1, got {value}")
        noisy = self.algorithm.endswith("noisy")
        if noisy and not 0.0 < self.p < 0.5:
            raise ExperimentError("noisy algorithms need a flip probability p in (0, 0.5)")
        if not noisy and self.budget == "auto:noisy":
            raise ExperimentError("auto:noisy budget applies only to noisy algorithms")


def _resolve_instance(config: ExperimentConfig, trial_seed: int):
    if config.hypergraph_path is not None:
        return load_hypergraph(config.hypergraph_path), load_labels(config.labels_path)
    seed = config.master_seed if config.fix_instance else trial_seed
    return block_model(dataclasses.replace(config.generator, seed=seed))


def _resolve_budget(config: ExperimentConfig, params, m_seed: int | None) -> int:
    if not config.budget.startswith("auto:"):
        return int(config.budget)
    kappa = params.kappa if params.kappa is not None else 1
    if not math.isfinite(kappa):
        raise ExperimentError("instance has no finite clusteredness radius; auto budgets unavailable")
    inputs = BoundInputs(
        n=params.n,
        k=params.k,
        beta=params.beta,
        m=params.m,
        kappa=kappa,
        c_min=params.c_min,
        delta=config.delta,
        p=config.p,
    )
    if config.budget == "auto:q_star":
        return math.ceil(point_query_bound(inputs))
    if config.budget == "auto:q_star_pair":
        return math.ceil(pair_query_bound(inputs))
    quarter = dataclasses.replace(inputs, delta=config.delta / 4.0)
    if m_seed is None:
        raise ExperimentError("noisy budget needs the seed sample size")
    return math.ceil(noisy_query_bound(inputs, m_seed, point_query_bound(quarter)))


def _resolve_seed_size(config: ExperimentConfig, params) -> int | None:
    if not config.algorithm.endswith("noisy"):
        return None
    if config.seed_sample_size is not None:
        return config.seed_sample_size
    kappa = params.kappa if params.kappa is not None else 1
    if not math.isfinite(kappa):
        raise ExperimentError("instance has no finite clusteredness radius; auto seed sizing unavailable")
    quarter = BoundInputs(
        n=params.n,
        k=params.k,
        beta=params.beta,
        m=params.m,
        kappa=kappa,
        c_min=params.c_min,
        delta=config.delta / 4.0,
        p=config.p,
    )
    m_seed = min_seed_sample_size(params.k, params.beta, config.p, config.delta, point_query_bound(quarter))
    if m_seed > params.n:
        raise ExperimentError(f"required seed sample size {m_seed} exceeds node count {params.n}")
    return m_seed


def _run_trial(config: ExperimentConfig, trial_index: int) -> tuple[dict, float]:
    start = time.perf_counter()
    trial_seed = config.master_seed ^ trial_index
    g, f = _resolve_instance(config, trial_seed)
    if config.algorithm.startswith("ce-"):
        g = clique_expansion(g)
    profile = cut_profile(g, f)
    kappa_skipped = False
    try:
        params = structural_params(g, f, profile)
    except CutAnalysisError:
        # exact radius infeasible at this scale: record a blank kappa cell
        kappa_skipped = True
        params = structural_params(g, f, profile, with_radius=False)
    if kappa_skipped and (config.budget.startswith("auto:") or (config.algorithm.endswith("noisy") and config.seed_sample_size is None)):
        raise ExperimentError("clusteredness radius unavailable for this instance; auto budgets and auto seed sizing need an explicit value")
    m_seed = _resolve_seed_size(config, params)
    budget = _resolve_budget(config, params, m_seed)
    oracle_seed = trial_seed ^ _ORACLE_SALT
    engine_seed = trial_seed ^ _ENGINE_SALT
    if config.algorithm.endswith("point"):
        oracle = PointwiseOracle(truth=f)
        runner = lambda: run_pointwise(g, oracle, budget, engine_seed, profile.cut_edges)
    elif config.algorithm.endswith("noisy"):
        oracle = PairwiseOracle(truth=f, flip_prob=config.p, rng_seed=oracle_seed)
        runner = lambda: run_pairwise_noisy(
            g,
            oracle,
            budget,
            m_seed,
            engine_seed,
            profile.cut_edges,
            skip_random_sampling=config.skip_random_sampling,
        )
    else:
        oracle = PairwiseOracle(truth=f, flip_prob=0.0, rng_seed=oracle_seed)
        runner = lambda: run_pairwise(g, oracle, budget, engine_seed, profile.cut_edges)
    if config.trace_prefix is not None:
        enable_tracing(oracle)
    result = runner()
    if config.trace_prefix is not None:
        with open(f"{config.trace_prefix}.trial{trial_index}.txt", "w", encoding="ascii") as fh:
            fh.write(format_trace(oracle.ledger))
    row = {
        "algorithm": config.algorithm,
        "n": params.n,
        "k": params.k,
        "trial": trial_index,
        "seed": trial_seed,
        "budget": budget,
        "queries_used": result.queries_used,
        "queries_until_recovery": result.queries_until_recovery,
        "success": 1 if result.success else 0,
        "beta": params.beta,
        "m": params.m,
        "kappa": None if kappa_skipped else params.kappa,
        "c_size": params.c_size,
        "boundary_size": params.boundary_size,
    }
    return row, (time.perf_counter() - start) * 1000.0


def _trial_payload(args: tuple[ExperimentConfig, int]) -> tuple[dict, float]:
    return _run_trial(*args)


def run_experiment(config: ExperimentConfig) -> tuple[list[dict], list[float]]:
    """Execute all trials; rows and timings are merged in trial order."""
    payloads = [(config, i) for i in range(config.trials)]
    if config.workers == 1:
        outcomes = [_trial_payload(p) for p in payloads]
    else:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            outcomes = list(pool.map(_trial_payload, payloads))
    rows = [row for row, _ in outcomes]
    timings = [ms for _, ms in outcomes]
    return rows, timings


def _format_cell(key: str, value) -> str:
    if value is None:
        return ""
    if key == "kappa":
        if not math.isfinite(value):
            return "inf"
        return str(int(value))
    if key == "beta":
        return repr(float(value))
    return str(value)


def format_results(rows: list[dict]) -> str:
    columns = RESULTS_HEADER.split(",")
    lines = [f"# {RESULTS_VERSION}", RESULTS_HEADER]
    for row in rows:
        lines.append(",".join(_format_cell(col, row[col]) for col in columns))
    return "\n".join(lines) + "\n"


def write_results(path: str, rows: list[dict]) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_results(rows))


def write_timings(path: str, timings: list[float]) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write("trial,runtime_ms\n")
        for i, ms in enumerate(timings):
            fh.write(f"{i},{ms:.3f}\n")


def summarize(rows: list[dict], timings: list[float]) -> str:
    """Aggregate success rate, recovery statistics, and mean runtime."""
    total = len(rows)
    successes = sum(row["success"] for row in rows)
    recoveries = [row["queries_until_recovery"] for row in rows if row["queries_until_recovery"] is not None]
    lines = [
        f"trials={total}",
        f"success_rate={successes / total:.4f}",
        f"recovered={len(recoveries)}",
    ]
    if recoveries:
        mean = statistics.fmean(recoveries)
        std = statistics.pstdev(recoveries) if len(recoveries) > 1 else 0.0
        lines.append(f"mean_queries_until_recovery={mean:.3f}")
        lines.append(f"std_queries_until_recovery={std:.3f}")
    lines.append(f"mean_queries_used={statistics.fmean(row['queries_used'] for row in rows):.3f}")
    lines.append(f"mean_runtime_ms={statistics.fmean(timings):.1f}")
    return "\n".join(lines)
