"""Command-line harness: generate, analyze, bound, run."""

from __future__ import annotations

import argparse
import math
import sys

from .bounds import BoundInputs, bound_report, seed_size_thresholds
from .cuts import compare_with_expansion, cut_profile, structural_params
from .datagen import BlockModelParams, block_model, load_features, nearest_neighbor_hypergraph
from .experiments import ExperimentConfig, run_experiment, summarize, write_results, write_timings
from .hypergraph import load_hypergraph, save_hypergraph
from .labels import load_labels, save_labels


def _add_instance_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--hypergraph", help="hypergraph text file")
    parser.add_argument("--labels", help="label file (node_id class_id per line)")


def _load_instance(args):
    if not args.hypergraph or not args.labels:
        raise SystemExit("need --hypergraph and --labels")
    return load_hypergraph(args.hypergraph), load_labels(args.labels)


def cmd_generate(args) -> int:
    if args.kind == "hsbm":
        params = BlockModelParams(
            n=args.n, k=args.k, q_in=args.q_in, q_out=args.q_out, edge_size=args.edge_size, seed=args.seed
        )
        g, f = block_model(params)
        save_hypergraph(g, f"{args.out}.hg")
        save_labels(f, f"{args.out}.labels")
        manifest = (
            f"kind=hsbm n={args.n} k={args.k} q_in={args.q_in} q_out={args.q_out} "
            f"edge_size={args.edge_size} seed={args.seed} edges={g.m}\n"
        )
    else:
        features = load_features(args.features)
        g = nearest_neighbor_hypergraph(features, neighbors=args.neighbors)
        save_hypergraph(g, f"{args.out}.hg")
        manifest = f"kind=knn features={args.features} neighbors={args.neighbors} points={features.count} edges={g.m}\n"
    with open(f"{args.out}.manifest", "w", encoding="ascii") as fh:
        fh.write(manifest)
    print(f"wrote {args.out}.hg ({manifest.strip()})")
    return 0


def _print_kv(key: str, value) -> None:
    if isinstance(value, float):
        if math.isinf(value):
            print(f"{key}=inf")
        else:
            print(f"{key}={value:.6g}")
    else:
        print(f"{key}={value}")


def cmd_analyze(args) -> int:
    g, f = _load_instance(args)
    comparison = compare_with_expansion(g, f)
    base, ce = comparison.base, comparison.expanded
    for prefix, params in (("", base), ("ce_", ce)):
        _print_kv(f"{prefix}n", params.n)
        _print_kv(f"{prefix}k", params.k)
        _print_kv(f"{prefix}beta", params.beta)
        _print_kv(f"{prefix}m", params.m)
        _print_kv(f"{prefix}kappa", "none" if params.kappa is None else params.kappa)
        _print_kv(f"{prefix}c_size", params.c_size)
        _print_kv(f"{prefix}boundary_size", params.boundary_size)
        _print_kv(f"{prefix}c_min", params.c_min)
        _print_kv(f"{prefix}t_components", params.t_components)
    for name in ("beta_equal", "m_equal", "kappa_equal", "boundary_equal", "min_cut_le"):
        _print_kv(name, int(getattr(comparison, name)))
    return 0


def cmd_bound(args) -> int:
    g, f = _load_instance(args)
    params = structural_params(g, f)
    kappa = params.kappa if params.kappa is not None else 1
    if kappa is not None and not math.isfinite(kappa):
        raise SystemExit("instance has no finite clusteredness radius; bounds unavailable")
    inputs = BoundInputs(
        n=params.n,
        k=params.k,
        beta=params.beta,
        m=params.m,
        kappa=kappa,
        c_min=params.c_min,
        delta=args.delta,
        p=args.p,
    )
    noisy = args.mode == "noisy"
    report = bound_report(inputs, noisy=noisy, m_seed=args.seed_size)
    _print_kv("n", inputs.n)
    _print_kv("k", inputs.k)
    _print_kv("beta", inputs.beta)
    _print_kv("m", inputs.m)
    _print_kv("kappa", inputs.kappa)
    _print_kv("c_min", inputs.c_min)
    _print_kv("delta", inputs.delta)
    _print_kv("witness_term", report.witness_term)
    _print_kv("point_bound", report.point_bound)
    _print_kv("pair_bound", report.pair_bound)
    _print_kv("search_bound", report.search_bound)
    if noisy:
        _print_kv("p", inputs.p)
        _print_kv("min_seed_size", report.min_seed_size)
        _print_kv("noisy_bound", report.noisy_bound)
        names = ("growth", "class_coverage", "phase_one_confidence", "vote_union")
        for name, threshold in zip(names, report.seed_thresholds):
            _print_kv(f"constraint_{name}_threshold", threshold)
            _print_kv(f"constraint_{name}_satisfied", int(report.min_seed_size >= threshold))
    return 0


def _build_run_config(args) -> ExperimentConfig:
    generator = None
    if args.hsbm_n is not None:
        generator = BlockModelParams(
            n=args.hsbm_n,
            k=args.hsbm_k,
            q_in=args.hsbm_q_in,
            q_out=args.hsbm_q_out,
            edge_size=args.hsbm_edge_size,
            seed=0,
        )
    return ExperimentConfig(
        algorithm=args.algorithm,
        trials=args.trials,
        master_seed=args.seed,
        workers=args.workers,
        hypergraph_path=args.hypergraph,
        labels_path=args.labels,
        generator=generator,
        fix_instance=args.fix_instance,
        budget=args.budget,
        delta=args.delta,
        p=args.p,
        seed_sample_size=args.seed_size,
        skip_random_sampling=args.skip_random_sampling,
        trace_prefix=args.trace,
    )


def cmd_run(args) -> int:
    config = _build_run_config(args)
    rows, timings = run_experiment(config)
    write_results(args.out, rows)
    write_timings(f"{args.out}.timing.csv", timings)
    print(summarize(rows, timings))
    print(f"rows_written={len(rows)} out={args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hs2", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a labeled instance to files")
    gen_sub = gen.add_subparsers(dest="kind", required=True)
    hsbm = gen_sub.add_parser("hsbm", help="equal-block random hypergraph")
    hsbm.add_argument("--n", type=int, required=True)
    hsbm.add_argument("--k", type=int, required=True)
    hsbm.add_argument("--q-in", dest="q_in", type=float, default=0.8)
    hsbm.add_argument("--q-out", dest="q_out", type=float, default=0.2)
    hsbm.add_argument("--edge-size", dest="edge_size", type=int, default=3)
    hsbm.add_argument("--seed", type=int, default=0)
    hsbm.add_argument("--out", required=True, help="output path prefix")
    hsbm.set_defaults(func=cmd_generate)
    knn = gen_sub.add_parser("knn", help="nearest-neighbor hypergraph from features")
    knn.add_argument("--features", required=True, help="comma-separated feature rows")
    knn.add_argument("--neighbors", type=int, default=2)
    knn.add_argument("--out", required=True, help="output path prefix")
    knn.set_defaults(func=cmd_generate)

    analyze = sub.add_parser("analyze", help="structural parameters vs clique expansion")
    _add_instance_args(analyze)
    analyze.set_defaults(func=cmd_analyze)

    bound = sub.add_parser("bound", help="query-budget report for an instance")
    _add_instance_args(bound)
    bound.add_argument("--delta", type=float, default=0.1)
    bound.add_argument("--mode", choices=("point", "pair", "noisy"), default="point")
    bound.add_argument("--p", type=float, default=0.0)
    bound.add_argument("--seed-size", dest="seed_size", type=int, default=None)
    bound.set_defaults(func=cmd_bound)

    run = sub.add_parser("run", help="seeded trials appending a results table")
    run.add_argument("--algorithm", required=True)
    _add_instance_args(run)
    run.add_argument("--hsbm-n", dest="hsbm_n", type=int, default=None)
    run.add_argument("--hsbm-k", dest="hsbm_k", type=int, default=2)
    run.add_argument("--hsbm-q-in", dest="hsbm_q_in", type=float, default=0.8)
    run.add_argument("--hsbm-q-out", dest="hsbm_q_out", type=float, default=0.2)
    run.add_argument("--hsbm-edge-size", dest="hsbm_edge_size", type=int, default=3)
    run.add_argument("--budget", default="auto:q_star", help="integer or auto:q_star|auto:q_star_pair|auto:noisy")
    run.add_argument("--delta", type=float, default=0.1)
    run.add_argument("--p", type=float, default=0.0)
    run.add_argument("--seed-size", dest="seed_size", type=int, default=None)
    run.add_argument("--trials", type=int, default=1)
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--workers", type=int, default=1)
    run.add_argument("--fix-instance", dest="fix_instance", action="store_true")
    run.add_argument("--skip-random-sampling", dest="skip_random_sampling", action="store_true")
    run.add_argument("--trace", default=None, help="per-trial oracle trace file prefix")
    run.add_argument("--out", default="results.csv")
    run.set_defaults(func=cmd_run)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
