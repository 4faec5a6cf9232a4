"""Hypergraph active cut learning with pointwise and pairwise oracles."""

from .bounds import (
    BoundInputs,
    BoundReport,
    bernoulli_kl,
    bound_report,
    kl_lower_bound,
    min_seed_sample_size,
    noisy_query_bound,
    pair_query_bound,
    point_query_bound,
    search_phase_bound,
    seed_size_thresholds,
    witness_sample_bound,
)
from .cuts import (
    CutProfile,
    ExpansionComparison,
    StructuralParams,
    balancedness,
    clusteredness_radius,
    compare_with_expansion,
    cut_dual_graph,
    cut_edge_distance,
    cut_profile,
    structural_params,
)
from .datagen import (
    BlockModelParams,
    FeatureMatrix,
    block_model,
    load_features,
    nearest_neighbor_hypergraph,
)
from .engine import (
    LabelList,
    RunResult,
    cluster_seed_sample,
    next_bisection_target,
    remove_inconsistent,
    run_pairwise,
    run_pairwise_noisy,
    run_pointwise,
    vote_classify,
)
from .experiments import ExperimentConfig, format_results, run_experiment, summarize, write_results
from .hypergraph import (
    Hypergraph,
    HyperPath,
    HypergraphError,
    build,
    clique_expansion,
    connected_components,
    distance_matrix,
    load_hypergraph,
    read_hypergraph_text,
    remove_edges,
    save_hypergraph,
    shortest_path,
    write_hypergraph_text,
)
from .labels import LabelFunction, label_function, load_labels, read_labels_text, save_labels, write_labels_text
from .oracles import PairwiseOracle, PointwiseOracle, QueryLedger, enable_tracing, format_trace, ledger_snapshot

__all__ = [name for name in dir() if not name.startswith("_")]
