"""Shared fixtures and small graph builders."""

from __future__ import annotations

import numpy as np
import pytest

from netgrowth import (
    ArrivalEvent,
    ArrivalLog,
    EventKind,
    GrowthRecipe,
    MixtureModel,
    NULL,
    OuterModel,
    build_graph,
    grow,
    single_edge_seed,
)
from netgrowth.components import Terms

NN = EventKind.NEW_NODE
NX = EventKind.NEW_NODE_EXTRA
IE = EventKind.INNER_EDGE

NULL_TERMS: Terms = ((1.0, NULL),)


def make_log(kinds_and_edges, seed_size=0) -> ArrivalLog:
    events = [ArrivalEvent(k, u, v) for k, u, v in kinds_and_edges]
    return ArrivalLog(seed_size=seed_size, events=events)


@pytest.fixture
def path3():
    """Path 0-1-2 (the two-link example graph; node 1 is the centre)."""
    return build_graph(make_log([(NN, 0, 1), (NN, 2, 1)]))


@pytest.fixture
def k3():
    return build_graph(make_log([(NN, 0, 1), (NN, 2, 1), (IE, 0, 2)]))


@pytest.fixture
def worked_log():
    """Two-link seed, then two further nodes both attaching to the centre."""
    return make_log([(NN, 0, 1), (NN, 2, 1), (NN, 3, 1), (NN, 4, 1)], seed_size=2)


def grow_log(
    target_edges: int,
    new_terms: Terms,
    edge_terms: Terms = NULL_TERMS,
    outer: OuterModel | None = None,
    rng_seed: int = 0,
) -> ArrivalLog:
    recipe = GrowthRecipe(
        seed=single_edge_seed(),
        outer=outer or OuterModel.constant(1, 0),
        inner=MixtureModel(new_terms, edge_terms),
        target_edges=target_edges,
        rng_seed=rng_seed,
    )
    return grow(recipe).log


def random_connected_graph(rng_seed: int, max_nodes: int = 30):
    """Small connected simple graph with some inner edges, via seeded growth."""
    rng = np.random.default_rng(rng_seed)
    outer = OuterModel({1: 0.6, 2: 0.4}, {0: 0.6, 1: 0.4})
    target = int(rng.integers(8, max_nodes))
    log = grow_log(target, NULL_TERMS, NULL_TERMS, outer=outer, rng_seed=rng_seed)
    return build_graph(log)
