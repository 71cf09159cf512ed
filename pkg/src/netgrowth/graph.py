"""Incrementally maintained undirected simple graph and its arrival-event log.

The graph is grown one edge at a time.  Every event is either the arrival of
a new node attaching to an existing one, a follow-up attachment of the same
new node, or an inner edge between two existing nodes.  Degree counts,
per-node triangle counts and a few aggregate counters are maintained
incrementally so that attachment-weight sums can be read off in O(1).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator

import numpy as np


class EventKind(Enum):
    NEW_NODE = "new_node"
    NEW_NODE_EXTRA = "new_node_extra"
    INNER_EDGE = "inner_edge"


class LogViolation(ValueError):
    """An event that cannot be applied to the current graph state."""

    def __init__(self, message: str, event_index: int | None = None):
        self.event_index = event_index
        if event_index is not None:
            message = f"event {event_index}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class ArrivalEvent:
    """One edge addition.

    For NEW_NODE and NEW_NODE_EXTRA, ``u`` is the arriving node and ``v``
    the chosen existing node.  For INNER_EDGE, ``u`` is the first chosen
    endpoint and ``v`` the second.
    """

    kind: EventKind
    u: int
    v: int


@dataclass
class ArrivalLog:
    """Ordered record of graph growth.

    The first ``seed_size`` events build the starting state G_0; likelihood
    windows normally begin after them.  ``labels`` optionally maps dense
    node ids back to the input labels they were assigned from.
    """

    seed_size: int
    events: list[ArrivalEvent] = field(default_factory=list)
    labels: list[str] | None = None

    def __len__(self) -> int:
        return len(self.events)

    def prefix(self, n_events: int) -> "ArrivalLog":
        """A copy truncated to the first ``n_events`` events."""
        return ArrivalLog(
            seed_size=min(self.seed_size, n_events),
            events=list(self.events[:n_events]),
            labels=None if self.labels is None else list(self.labels),
        )


_GROW = 1024


class EvolvingGraph:
    """Undirected simple connected graph with incremental node metrics.

    Maintains, besides adjacency: per-node degree and triangle counts
    (numpy arrays), the total triangle count sum, and the number of
    degree-1 and degree-2 nodes.  These aggregates let attachment models
    normalise without scanning all nodes.
    """

    def __init__(self) -> None:
        self.adjacency: list[set[int]] = []
        self._degrees = np.zeros(_GROW, dtype=np.int64)
        self._triangles = np.zeros(_GROW, dtype=np.int64)
        self.node_count = 0
        self.edge_count = 0
        self.triangle_total = 0  # sum of per-node triangle counts
        self.degree_one_count = 0
        self.degree_two_count = 0

    # -- views ---------------------------------------------------------

    @property
    def degrees(self) -> np.ndarray:
        return self._degrees[: self.node_count]

    @property
    def triangles(self) -> np.ndarray:
        return self._triangles[: self.node_count]

    def degree(self, u: int) -> int:
        return int(self._degrees[u])

    def neighbors(self, u: int) -> set[int]:
        return self.adjacency[u]

    def neighbor_array(self, u: int) -> np.ndarray:
        return np.fromiter(self.adjacency[u], dtype=np.int64, count=len(self.adjacency[u]))

    def has_node(self, u: int) -> bool:
        return 0 <= u < self.node_count

    def has_edge(self, u: int, v: int) -> bool:
        return self.has_node(u) and self.has_node(v) and v in self.adjacency[u]

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.node_count):
            for v in self.adjacency[u]:
                if u < v:
                    yield (u, v)

    # -- mutation ------------------------------------------------------

    def _add_node(self) -> int:
        u = self.node_count
        if u >= len(self._degrees):
            extra = max(_GROW, len(self._degrees))
            self._degrees = np.concatenate([self._degrees, np.zeros(extra, dtype=np.int64)])
            self._triangles = np.concatenate([self._triangles, np.zeros(extra, dtype=np.int64)])
        self.adjacency.append(set())
        self.node_count += 1
        return u

    def _bump_degree(self, u: int) -> None:
        d = int(self._degrees[u])
        if d == 1:
            self.degree_one_count -= 1
            self.degree_two_count += 1
        elif d == 2:
            self.degree_two_count -= 1
        elif d == 0:
            self.degree_one_count += 1
        self._degrees[u] = d + 1

    def _add_edge(self, u: int, v: int) -> None:
        common = self.adjacency[u] & self.adjacency[v]
        k = len(common)
        if k:
            self._triangles[u] += k
            self._triangles[v] += k
            for w in common:
                self._triangles[w] += 1
            self.triangle_total += 3 * k
        self.adjacency[u].add(v)
        self.adjacency[v].add(u)
        self._bump_degree(u)
        self._bump_degree(v)
        self.edge_count += 1

    def apply_event(self, event: ArrivalEvent, index: int | None = None) -> None:
        """Apply one arrival event, validating it against the current state.

        The very first NEW_NODE event of a log bootstraps both endpoints
        (there is no existing node to attach to yet).
        """
        u, v = event.u, event.v
        if u == v:
            raise LogViolation(f"self-loop on node {u}", index)
        if event.kind is EventKind.NEW_NODE:
            if self.node_count == 0:
                if {u, v} != {0, 1}:
                    raise LogViolation(
                        f"bootstrap event must introduce nodes 0 and 1, got ({u},{v})", index
                    )
                self._add_node()
                self._add_node()
                self._add_edge(0, 1)
                return
            if u != self.node_count:
                raise LogViolation(
                    f"new node id {u} is not the next dense id {self.node_count}", index
                )
            if not self.has_node(v):
                raise LogViolation(f"unknown attachment target {v}", index)
            self._add_node()
            self._add_edge(u, v)
            return
        # NEW_NODE_EXTRA and INNER_EDGE both join two present nodes
        if not self.has_node(u):
            raise LogViolation(f"unknown endpoint {u}", index)
        if not self.has_node(v):
            raise LogViolation(f"unknown endpoint {v}", index)
        if self.has_edge(u, v):
            raise LogViolation(f"duplicate edge ({u},{v})", index)
        self._add_edge(u, v)

    # -- candidate sets ------------------------------------------------

    def first_choice_candidates(self) -> np.ndarray:
        """All present nodes, ascending."""
        return np.arange(self.node_count, dtype=np.int64)

    def second_choice_candidates(self, first: int) -> np.ndarray:
        """All present nodes except ``first`` and its neighbors, ascending.

        May be empty when ``first`` is adjacent to every other node.
        """
        mask = np.ones(self.node_count, dtype=bool)
        mask[first] = False
        nbrs = self.neighbor_array(first)
        if nbrs.size:
            mask[nbrs] = False
        return np.flatnonzero(mask).astype(np.int64)

    # -- misc ----------------------------------------------------------

    def is_connected(self) -> bool:
        if self.node_count == 0:
            return True
        seen = {0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for w in self.adjacency[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == self.node_count

    def copy(self) -> "EvolvingGraph":
        g = EvolvingGraph()
        g.adjacency = [set(s) for s in self.adjacency]
        g._degrees = self._degrees.copy()
        g._triangles = self._triangles.copy()
        g.node_count = self.node_count
        g.edge_count = self.edge_count
        g.triangle_total = self.triangle_total
        g.degree_one_count = self.degree_one_count
        g.degree_two_count = self.degree_two_count
        return g


def replay(log: ArrivalLog, from_index: int = 0) -> Iterator[tuple[EvolvingGraph, ArrivalEvent]]:
    """Yield (graph-before-event, event) pairs from ``from_index`` onward.

    The yielded graph is the live replay graph; it mutates after each step.
    Consuming the full iterator leaves it in the final state G_t.
    """
    if not 0 <= from_index <= len(log.events):
        raise LogViolation(f"from_index {from_index} outside log of {len(log.events)} events")
    graph = EvolvingGraph()
    for i, event in enumerate(log.events):
        if i >= from_index:
            yield graph, event
        graph.apply_event(event, index=i)


def build_graph(log: ArrivalLog, upto: int | None = None) -> EvolvingGraph:
    """Replay a log (or its first ``upto`` events) into a graph."""
    graph = EvolvingGraph()
    events = log.events if upto is None else log.events[:upto]
    for i, event in enumerate(events):
        graph.apply_event(event, index=i)
    return graph
