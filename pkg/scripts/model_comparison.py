#!/usr/bin/env python3
"""Score several candidate attachment models against one arrival log.

Evaluates each candidate on the new-node stream and prints deviance,
null deviance and the per-choice likelihood ratio, best first, followed
by a summary-statistics row for the log's final graph.

    python3 scripts/model_comparison.py --log mylog.log
    python3 scripts/model_comparison.py --demo
"""

import argparse

from netgrowth import (
    DEGREE,
    GrowthRecipe,
    MixtureModel,
    NULL,
    OuterModel,
    build_graph,
    evaluate,
    pure,
    pfp,
    read_log,
    single_edge_seed,
    summary,
    grow,
)

CANDIDATES = [
    "null",
    "degree",
    "triangle",
    "pfp(0.05)",
    "pfp(0.1)",
    "0.9*degree+0.1*singleton",
    "0.5*degree+0.5*null",
]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--log", help="normalized arrival-log file")
    parser.add_argument("--demo", action="store_true",
                        help="use a synthetic pfp(0.1)-grown 10k-edge log")
    parser.add_argument("--rng", type=int, default=0, help="seed for the demo log")
    args = parser.parse_args()

    if args.demo or not args.log:
        result = grow(
            GrowthRecipe(
                seed=single_edge_seed(),
                outer=OuterModel.constant(1, 0),
                inner=pure(pfp(0.1)),
                target_edges=10_000,
                rng_seed=args.rng,
            )
        )
        log = result.log
        print("demo log: 10,000 edges grown with pure pfp(0.1) attachment\n")
    else:
        log = read_log(args.log)

    from netgrowth import parse_terms

    rows = []
    for spec in CANDIDATES:
        model = MixtureModel(parse_terms(spec), ((1.0, NULL),))
        rep = evaluate(model, log).new_node
        rows.append((spec, rep))
    rows.sort(key=lambda r: -r[1].per_choice_ratio)

    print(f"{'model':<28}{'choices':>9}{'D':>14}{'D0':>14}{'c0':>10}")
    for spec, rep in rows:
        print(
            f"{spec:<28}{rep.choice_count:>9}{rep.deviance:>14.4g}"
            f"{rep.null_deviance:>14.4g}{rep.per_choice_ratio:>10.5g}"
        )

    s = summary(build_graph(log))
    print(
        f"\ngraph: {s.node_count} nodes, {s.edge_count} edges, "
        f"d1={s.frac_degree_1:.3g} d2={s.frac_degree_2:.3g} "
        f"mean_d2={s.mean_square_degree:.4g} dmax={s.max_degree}"
    )


if __name__ == "__main__":
    main()
