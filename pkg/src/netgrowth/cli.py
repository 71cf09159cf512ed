"""Command-line surface: preprocess, evaluate, fit, scan, grow, stats.

Human output is aligned text; machine output is tab-separated key/value
lines carrying a format-version field.  Exit status: 0 success, 1 data
error (with a structured message on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from . import fitting, generate, logio, netstats
from .graph import ArrivalLog, LogViolation, build_graph
from .likelihood import LikelihoodReport, evaluate
from .logio import (
    DataError,
    FORMAT_VERSION,
    ModelSpecError,
    NormalizeOptions,
    atomic_write,
    parse_edge_log,
    parse_model_spec,
    parse_terms,
    read_log,
    render_terms,
)


def _window(args, log: ArrivalLog) -> tuple[int, int]:
    start = args.window_from if args.window_from is not None else log.seed_size
    stop = args.window_to if args.window_to is not None else len(log.events)
    return (start, stop)


def _machine_block(pairs: list[tuple[str, object]]) -> str:
    lines = [f"format_version\t{FORMAT_VERSION}"]
    lines += [f"{key}\t{value}" for key, value in pairs]
    return "\n".join(lines) + "\n"


def _emit_machine(destination: str | None, pairs: list[tuple[str, object]]) -> None:
    if destination is None:
        return
    block = _machine_block(pairs)
    if destination == "-":
        sys.stdout.write(block)
    else:
        atomic_write(destination, block)


def _sig3(value: float | None) -> str:
    return "undef" if value is None else f"{value:.3g}"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_preprocess(args) -> int:
    with open(args.input, encoding="utf-8") as handle:
        parsed = parse_edge_log(handle, fmt=args.format)
    survivors = None
    if args.survivors:
        with open(args.survivors, encoding="utf-8") as handle:
            surv = parse_edge_log(handle, fmt="plain")
        survivors = frozenset(frozenset((r.u, r.v)) for r in surv.records)
    seed_edges = args.seed_edges
    if seed_edges is None:
        seed_edges = int(parsed.header.get("seed_size", 1))
    result = logio.normalize_connected_order(
        parsed.records,
        NormalizeOptions(
            seed_edges=seed_edges,
            warmup_events=args.warmup_events,
            warmup_timestamp=args.warmup_timestamp,
            survivors=survivors,
        ),
    )
    logio.write_log(args.output, result.log)
    print(f"events            {len(result.log.events)}")
    print(f"seed_size         {result.log.seed_size}")
    print(f"duplicates        {result.duplicates}")
    print(f"delayed           {result.delayed}")
    print(f"self_loops        {parsed.self_loops_dropped}")
    print(f"malformed_lines   {len(parsed.malformed)}")
    print(f"filtered          {result.filtered}")
    print(f"unplaced          {len(result.unplaced)}")
    for rec in result.unplaced[:20]:
        print(f"  unplaced: {rec.u} {rec.v}")
    return 0


def _report_pairs(report: LikelihoodReport) -> list[tuple[str, object]]:
    pairs: list[tuple[str, object]] = []
    for name in ("new_node", "inner_edge", "overall"):
        stream = report.stream(name)
        pairs += [
            (f"{name}.choices", stream.choice_count),
            (f"{name}.log_likelihood", repr(stream.log_likelihood)),
            (f"{name}.deviance", repr(stream.deviance)),
            (f"{name}.null_deviance", repr(stream.null_deviance)),
            (f"{name}.c0", repr(stream.per_choice_ratio)),
            (f"{name}.aic", repr(stream.aic)),
            (f"{name}.zero_events", len(stream.zero_probability_events)),
        ]
    return pairs


def _print_report(report: LikelihoodReport) -> None:
    header = f"{'stream':<12}{'choices':>9}{'D':>14}{'D0':>14}{'c0':>10}{'AIC':>14}{'zeros':>7}"
    print(header)
    for name in ("new_node", "inner_edge", "overall"):
        s = report.stream(name)
        print(
            f"{name:<12}{s.choice_count:>9}{s.deviance:>14.4g}{s.null_deviance:>14.4g}"
            f"{s.per_choice_ratio:>10.4g}{s.aic:>14.4g}{len(s.zero_probability_events):>7}"
        )


def _cmd_evaluate(args) -> int:
    log = read_log(args.log)
    model = parse_model_spec(args.newnode, args.inneredge)
    report = evaluate(model, log, window=_window(args, log), epsilon=args.epsilon)
    _print_report(report)
    _emit_machine(args.machine, _report_pairs(report))
    return 0


def _cmd_fit(args) -> int:
    log = read_log(args.log)
    components = tuple(parse_terms(f"{part}")[0][1] for part in args.components.split(","))
    dataset = fitting.build_dataset(
        components,
        log,
        window=_window(args, log),
        stream=args.stream,
        sampling=fitting.SamplingPolicy(
            negatives_per_choice=args.negatives, rng_seed=args.rng
        ),
    )
    result = fitting.fit_mixture(dataset)
    print(f"{'component':<14}{'beta':>10}{'stderr':>12}{'significant':>13}")
    for comp, beta, se, sig in zip(
        result.components, result.betas, result.standard_errors, result.significant
    ):
        print(f"{str(comp):<14}{beta:>10.4f}{se:>12.3g}{str(sig):>13}")
    print(f"fit_deviance      {result.fit_deviance:.6g}")
    print(f"rows              {dataset.row_count} (downsampled={dataset.downsampled})")
    if result.condition_warning:
        print("warning: near-singular design (collinear components)")
    if result.fallback_warning:
        print("warning: no positive mixture found; fell back to best single component")
    pairs: list[tuple[str, object]] = [("stream", args.stream)]
    pairs += [(f"beta.{comp}", repr(beta)) for comp, beta in zip(result.components, result.betas)]
    pairs += [
        ("fit_deviance", repr(result.fit_deviance)),
        ("condition_warning", result.condition_warning),
        ("fallback_warning", result.fallback_warning),
        ("rng_seed", args.rng),
    ]
    _emit_machine(args.machine, pairs)
    return 0


def _cmd_scan(args) -> int:
    log = read_log(args.log)
    terms = parse_terms(args.terms)
    grid = fitting.DeltaGrid(
        lo=args.lo, hi=args.hi, coarse_step=args.step, refine_levels=args.refine
    )
    result = fitting.scan_delta(
        terms, log, window=_window(args, log), stream=args.stream, grid=grid
    )
    print(f"{'delta':>10}{'c0':>14}{'D':>16}")
    for delta, c0, deviance in result.table:
        print(f"{delta:>10.4g}{c0:>14.6g}{deviance:>16.6g}")
    print(f"best_delta        {result.best_delta:.6g}")
    print(f"best_c0           {result.best_ratio:.6g}")
    _emit_machine(
        args.machine,
        [("best_delta", repr(result.best_delta)), ("best_c0", repr(result.best_ratio))],
    )
    return 0


def _cmd_grow(args) -> int:
    if args.seed_log:
        seed = read_log(args.seed_log)
        if args.seed_events is not None:
            seed = seed.prefix(args.seed_events)
    else:
        seed = generate.single_edge_seed()
    if args.outer_log:
        outer = generate.estimate_outer_model(read_log(args.outer_log))
    else:
        outer = generate.OuterModel.constant(args.n_const, args.m_const)
    recipe = generate.GrowthRecipe(
        seed=seed,
        outer=outer,
        inner=parse_model_spec(args.newnode, args.inneredge),
        target_edges=args.target_edges,
        rng_seed=args.rng,
    )
    result = generate.grow(recipe)
    logio.write_log(args.output, result.log)
    manifest: list[tuple[str, object]] = [
        ("rng_seed", args.rng),
        ("rng_algorithm", result.rng_algorithm),
        ("target_edges", args.target_edges),
        ("edges", result.graph.edge_count),
        ("nodes", result.graph.node_count),
        ("newnode_model", render_terms(recipe.inner.new_node_terms)),
        ("inneredge_model", render_terms(recipe.inner.inner_edge_terms)),
        ("outer_n", dict(sorted(outer.edges_per_new_node.items()))),
        ("outer_m", dict(sorted(outer.inner_edges_per_arrival.items()))),
    ]
    manifest += [(f"warning.{key}", value) for key, value in sorted(result.warnings.items())]
    if args.manifest:
        _emit_machine(args.manifest, manifest)
    else:
        sys.stdout.write(_machine_block(manifest))
    return 0


def _cmd_stats(args) -> int:
    graph = build_graph(read_log(args.graph))
    s = netstats.summary(graph)
    print(
        f"{'nodes':>8}{'edges':>8}{'d1':>8}{'d2':>8}{'mean_d2':>10}"
        f"{'dmax':>7}{'mean_d':>8}{'r':>10}{'gamma':>10}"
    )
    print(
        f"{s.node_count:>8}{s.edge_count:>8}{_sig3(s.frac_degree_1):>8}"
        f"{_sig3(s.frac_degree_2):>8}{_sig3(s.mean_square_degree):>10}{s.max_degree:>7}"
        f"{_sig3(s.mean_degree):>8}{_sig3(s.assortativity):>10}{_sig3(s.mean_clustering):>10}"
    )
    _emit_machine(
        args.machine,
        [
            ("nodes", s.node_count),
            ("edges", s.edge_count),
            ("frac_degree_1", repr(s.frac_degree_1)),
            ("frac_degree_2", repr(s.frac_degree_2)),
            ("mean_square_degree", repr(s.mean_square_degree)),
            ("max_degree", s.max_degree),
            ("mean_degree", repr(s.mean_degree)),
            ("assortativity", "undef" if s.assortativity is None else repr(s.assortativity)),
            ("mean_clustering", "undef" if s.mean_clustering is None else repr(s.mean_clustering)),
        ],
    )
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_window_flags(sub) -> None:
    sub.add_argument("--from", dest="window_from", type=int, default=None,
                     help="window start event index (default: after seed)")
    sub.add_argument("--to", dest="window_to", type=int, default=None,
                     help="window stop event index (default: end of log)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netgrowth",
        description="Likelihood scoring, fitting and generation of network-growth models",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("preprocess", help="normalize a raw edge list into an arrival log")
    p.add_argument("--input", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--format", choices=("plain", "timestamped"), default="plain")
    p.add_argument("--seed-edges", type=int, default=None,
                   help="events forming G_0 (default: input header, else 1)")
    p.add_argument("--warmup-events", type=int, default=0)
    p.add_argument("--warmup-timestamp", type=int, default=None)
    p.add_argument("--survivors", default=None,
                   help="edge list file; input edges absent from it are dropped")
    p.set_defaults(func=_cmd_preprocess)

    p = subs.add_parser("evaluate", help="likelihood statistics of a model on a log")
    p.add_argument("--log", required=True)
    p.add_argument("--newnode", required=True, help="new-node model spec, e.g. 0.9*degree+0.1*null")
    p.add_argument("--inneredge", required=True, help="inner-edge model spec")
    p.add_argument("--epsilon", type=float, default=0.0,
                   help="optional uniform smoothing fraction (default off)")
    p.add_argument("--machine", default=None, help="write machine record here ('-' for stdout)")
    _add_window_flags(p)
    p.set_defaults(func=_cmd_evaluate)

    p = subs.add_parser("fit", help="fit mixture weights over components")
    p.add_argument("--log", required=True)
    p.add_argument("--stream", choices=("new_node", "inner_edge"), required=True)
    p.add_argument("--components", required=True,
                   help="comma-separated, e.g. null,degree,pfp(0.05)")
    p.add_argument("--negatives", type=int, default=50)
    p.add_argument("--rng", type=int, required=True, help="seed for negative down-sampling")
    p.add_argument("--machine", default=None)
    _add_window_flags(p)
    p.set_defaults(func=_cmd_fit)

    p = subs.add_parser("scan", help="scan the pfp delta by per-choice likelihood ratio")
    p.add_argument("--log", required=True)
    p.add_argument("--stream", choices=("new_node", "inner_edge"), required=True)
    p.add_argument("--terms", required=True,
                   help="mixture with one pfp slot, e.g. 0.9*pfp(0)+0.1*singleton")
    p.add_argument("--lo", type=float, default=-2.5)
    p.add_argument("--hi", type=float, default=2.5)
    p.add_argument("--step", type=float, default=0.1)
    p.add_argument("--refine", type=int, default=2)
    p.add_argument("--machine", default=None)
    _add_window_flags(p)
    p.set_defaults(func=_cmd_scan)

    p = subs.add_parser("grow", help="grow an artificial topology")
    p.add_argument("--seed-log", default=None, help="seed from this log (default: single edge)")
    p.add_argument("--seed-events", type=int, default=None,
                   help="use only this many events of the seed log")
    p.add_argument("--newnode", required=True)
    p.add_argument("--inneredge", default="null")
    p.add_argument("--outer-log", default=None,
                   help="estimate the outer model from this log")
    p.add_argument("--n-const", type=int, default=1)
    p.add_argument("--m-const", type=int, default=0)
    p.add_argument("--target-edges", type=int, required=True)
    p.add_argument("--rng", type=int, required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--manifest", default=None, help="write run manifest here (default stdout)")
    p.set_defaults(func=_cmd_grow)

    p = subs.add_parser("stats", help="summary statistics of a graph/log file")
    p.add_argument("--graph", required=True)
    p.add_argument("--machine", default=None)
    p.set_defaults(func=_cmd_stats)

    return parser


def run_cli(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except (DataError, ModelSpecError, LogViolation, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
