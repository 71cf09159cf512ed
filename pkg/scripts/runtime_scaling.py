#!/usr/bin/env python3
"""Timing of likelihood evaluation as the log grows.

Grows logs of increasing size and times a two-term mixture evaluation on
each, printing the per-size wall time and the ratio between consecutive
sizes (incremental weight sums should keep growth near-linear).

    python3 scripts/runtime_scaling.py --sizes 10000 20000 50000 100000
"""

import argparse
import time

from netgrowth import (
    DEGREE,
    GrowthRecipe,
    MixtureModel,
    NULL,
    OuterModel,
    evaluate,
    grow,
    single_edge_seed,
)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+",
                        default=[10_000, 20_000, 50_000, 100_000])
    parser.add_argument("--rng", type=int, default=0)
    args = parser.parse_args()

    model = MixtureModel(((0.7, DEGREE), (0.3, NULL)), ((1.0, NULL),))
    print(f"{'edges':>10}{'grow_s':>10}{'eval_s':>10}{'ratio':>8}")
    previous = None
    for target in args.sizes:
        t0 = time.perf_counter()
        log = grow(
            GrowthRecipe(
                seed=single_edge_seed(),
                outer=OuterModel.constant(1, 0),
                inner=MixtureModel(((1.0, DEGREE),), ((1.0, NULL),)),
                target_edges=target,
                rng_seed=args.rng,
            )
        ).log
        t1 = time.perf_counter()
        evaluate(model, log)
        t2 = time.perf_counter()
        ratio = "" if previous is None else f"{(t2 - t1) / previous:.2f}"
        print(f"{target:>10}{t1 - t0:>10.2f}{t2 - t1:>10.2f}{ratio:>8}")
        previous = t2 - t1


if __name__ == "__main__":
    main()
