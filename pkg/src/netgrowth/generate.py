"""Artificial topology growth from an outer model and per-stream mixtures.

The outer model holds two empirical distributions estimated from a log: the
number of attachments N each new node arrives with, and the number of inner
edges M added between consecutive arrivals.  Growth repeats: sample N, add a
new node attached by N mixture-driven choices, sample M, add M inner edges,
until the edge target is reached.  All randomness comes from a seeded
numpy PCG64 generator so runs are bit-reproducible.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .components import Component, MixtureModel, mixture_probabilities
from .graph import ArrivalEvent, ArrivalLog, EventKind, EvolvingGraph, build_graph

RNG_ALGORITHM = "numpy-pcg64"

# give up on an inner-edge burst after this many consecutive failed draws
MAX_EDGE_FAILURES = 50


@dataclass(frozen=True)
class OuterModel:
    """Empirical distributions for attachments per new node and inner edges
    per arrival gap.  Keys are counts, values are probabilities."""

    edges_per_new_node: dict[int, float]
    inner_edges_per_arrival: dict[int, float]

    def __post_init__(self) -> None:
        for name, dist, low in (
            ("edges_per_new_node", self.edges_per_new_node, 1),
            ("inner_edges_per_arrival", self.inner_edges_per_arrival, 0),
        ):
            if not dist:
                raise ValueError(f"{name} is empty")
            if any(k < low for k in dist):
                raise ValueError(f"{name} support must be >= {low}")
            total = sum(dist.values())
            if abs(total - 1.0) > 1e-9:
                raise ValueError(f"{name} probabilities sum to {total}")
        object.__setattr__(self, "_n_keys", np.array(sorted(self.edges_per_new_node)))
        object.__setattr__(
            self,
            "_n_cum",
            np.cumsum([self.edges_per_new_node[int(k)] for k in self._n_keys]),
        )
        object.__setattr__(self, "_m_keys", np.array(sorted(self.inner_edges_per_arrival)))
        object.__setattr__(
            self,
            "_m_cum",
            np.cumsum([self.inner_edges_per_arrival[int(k)] for k in self._m_keys]),
        )

    @classmethod
    def constant(cls, n: int = 1, m: int = 0) -> "OuterModel":
        return cls({n: 1.0}, {m: 1.0})

    @staticmethod
    def _sample(keys: np.ndarray, cum: np.ndarray, rng: np.random.Generator) -> int:
        idx = int(np.searchsorted(cum, rng.random() * cum[-1], side="right"))
        return int(keys[min(idx, len(keys) - 1)])

    def sample_n(self, rng: np.random.Generator) -> int:
        return self._sample(self._n_keys, self._n_cum, rng)

    def sample_m(self, rng: np.random.Generator) -> int:
        return self._sample(self._m_keys, self._m_cum, rng)


def estimate_outer_model(log: ArrivalLog, window: tuple[int, int] | None = None) -> OuterModel:
    """Histogram N over arrival groups and M over the gaps between them.

    A NEW_NODE event and its NEW_NODE_EXTRA follow-ups form one arrival of
    N = 1 + number of follow-ups.  M counts the inner edges after each
    arrival up to the next one (the trailing gap included); inner edges
    before the first arrival in the window belong to no gap and are skipped.
    """
    start, stop = window if window is not None else (log.seed_size, len(log.events))
    n_counts: Counter[int] = Counter()
    m_counts: Counter[int] = Counter()
    current_n = 0
    current_m = 0
    seen_arrival = False
    for event in log.events[start:stop]:
        if event.kind is EventKind.NEW_NODE:
            if seen_arrival:
                n_counts[current_n] += 1
                m_counts[current_m] += 1
            seen_arrival = True
            current_n = 1
            current_m = 0
        elif event.kind is EventKind.NEW_NODE_EXTRA:
            current_n += 1
        else:
            if seen_arrival:
                current_m += 1
    if not seen_arrival:
        raise ValueError("window contains no new-node events")
    n_counts[current_n] += 1
    m_counts[current_m] += 1
    n_total = sum(n_counts.values())
    m_total = sum(m_counts.values())
    return OuterModel(
        {k: v / n_total for k, v in sorted(n_counts.items())},
        {k: v / m_total for k, v in sorted(m_counts.items())},
    )


def sample_choice(
    terms: Sequence[tuple[float, Component]],
    graph: EvolvingGraph,
    candidates: np.ndarray,
    rng: np.random.Generator,
) -> int:
    """Draw one candidate by cumulative-sum inversion in ascending id order."""
    p = mixture_probabilities(terms, graph, candidates)
    cum = np.cumsum(p)
    idx = int(np.searchsorted(cum, rng.random() * cum[-1], side="right"))
    return int(candidates[min(idx, len(candidates) - 1)])


def single_edge_seed() -> ArrivalLog:
    """Minimal seed: one edge between nodes 0 and 1."""
    return ArrivalLog(seed_size=1, events=[ArrivalEvent(EventKind.NEW_NODE, 0, 1)])


@dataclass(frozen=True)
class GrowthRecipe:
    seed: ArrivalLog
    outer: OuterModel
    inner: MixtureModel
    target_edges: int
    rng_seed: int


@dataclass
class GrowthResult:
    graph: EvolvingGraph
    log: ArrivalLog
    rng_algorithm: str = RNG_ALGORITHM
    warnings: dict[str, int] = field(default_factory=dict)


def grow(recipe: GrowthRecipe) -> GrowthResult:
    """Grow a network to ``target_edges`` edges from the seed log.

    The emitted log contains the seed events followed by every sampled
    event, so replaying it reproduces the grown graph exactly.
    """
    graph = build_graph(recipe.seed)
    if recipe.target_edges <= graph.edge_count:
        raise ValueError(
            f"target_edges {recipe.target_edges} must exceed seed edge count {graph.edge_count}"
        )
    rng = np.random.default_rng(recipe.rng_seed)
    events = list(recipe.seed.events)
    warnings = {"n_capped": 0, "edge_bursts_abandoned": 0, "extra_attach_exhausted": 0}
    new_terms = recipe.inner.new_node_terms
    edge_terms = recipe.inner.inner_edge_terms

    def add(event: ArrivalEvent) -> None:
        graph.apply_event(event)
        events.append(event)

    while graph.edge_count < recipe.target_edges:
        n = recipe.outer.sample_n(rng)
        if n > graph.node_count:
            n = graph.node_count
            warnings["n_capped"] += 1
        new_id = graph.node_count
        target = sample_choice(new_terms, graph, graph.first_choice_candidates(), rng)
        add(ArrivalEvent(EventKind.NEW_NODE, new_id, target))
        for _ in range(n - 1):
            if graph.edge_count >= recipe.target_edges:
                break
            candidates = graph.second_choice_candidates(new_id)
            if candidates.size == 0:
                warnings["extra_attach_exhausted"] += 1
                break
            chosen = sample_choice(new_terms, graph, candidates, rng)
            add(ArrivalEvent(EventKind.NEW_NODE_EXTRA, new_id, chosen))
        if graph.edge_count >= recipe.target_edges:
            break
        m = recipe.outer.sample_m(rng)
        failures = 0
        added = 0
        while added < m and graph.edge_count < recipe.target_edges:
            first = sample_choice(edge_terms, graph, graph.first_choice_candidates(), rng)
            second_set = graph.second_choice_candidates(first)
            if second_set.size == 0:
                failures += 1
                if failures >= MAX_EDGE_FAILURES:
                    warnings["edge_bursts_abandoned"] += 1
                    break
                continue
            second = sample_choice(edge_terms, graph, second_set, rng)
            add(ArrivalEvent(EventKind.INNER_EDGE, first, second))
            failures = 0
            added += 1

    log = ArrivalLog(seed_size=len(recipe.seed.events), events=events)
    return GrowthResult(graph=graph, log=log, warnings=warnings)
