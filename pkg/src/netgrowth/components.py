"""Attachment-model components and their linear mixtures.

Six component families assign a raw weight to each candidate node from its
degree d and triangle count t:

  null        1
  degree      d
  triangle    t
  singleton   1 if d == 1 else 0
  doubleton   1 if d == 2 else 0
  pfp(delta)  d ** (1 + delta * log10(d))

Weights are normalised over the candidate set to a probability vector.  A
component whose total weight over the candidates is zero (possible for
triangle / singleton / doubleton) falls back to the uniform null
distribution for that evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

if TYPE_CHECKING:
    from .graph import EvolvingGraph

WEIGHT_SUM_TOL = 1e-9


@dataclass(frozen=True)
class Component:
    """One attachment-weight family; only ``pfp`` carries a parameter."""

    name: str
    delta: float | None = None

    def __post_init__(self) -> None:
        if self.name not in _KNOWN:
            raise ValueError(f"unknown component {self.name!r}")
        if self.name == "pfp":
            if self.delta is None or not np.isfinite(self.delta):
                raise ValueError("pfp requires a finite delta")
        elif self.delta is not None:
            raise ValueError(f"{self.name} takes no parameter")

    def __str__(self) -> str:
        if self.name == "pfp":
            return f"pfp({self.delta!r})"
        return self.name


_KNOWN = {"null", "degree", "triangle", "singleton", "doubleton", "pfp"}

NULL = Component("null")
DEGREE = Component("degree")
TRIANGLE = Component("triangle")
SINGLETON = Component("singleton")
DOUBLETON = Component("doubleton")


def pfp(delta: float) -> Component:
    return Component("pfp", float(delta))


Terms = tuple[tuple[float, Component], ...]


def validate_terms(terms: Sequence[tuple[float, Component]]) -> Terms:
    terms = tuple((float(w), c) for w, c in terms)
    if not terms:
        raise ValueError("a mixture needs at least one term")
    total = 0.0
    for w, comp in terms:
        if not isinstance(comp, Component):
            raise TypeError(f"not a Component: {comp!r}")
        if not 0.0 <= w <= 1.0 + WEIGHT_SUM_TOL:
            raise ValueError(f"weight {w} outside [0, 1]")
        total += w
    if abs(total - 1.0) > WEIGHT_SUM_TOL:
        raise ValueError(f"mixture weights sum to {total}, expected 1")
    return terms


@dataclass(frozen=True)
class MixtureModel:
    """Per-stream weighted combinations of components.

    ``new_node_terms`` governs the choice of attachment targets for arriving
    nodes; ``inner_edge_terms`` governs both endpoint choices of edges
    between existing nodes.
    """

    new_node_terms: Terms
    inner_edge_terms: Terms

    def __post_init__(self) -> None:
        object.__setattr__(self, "new_node_terms", validate_terms(self.new_node_terms))
        object.__setattr__(self, "inner_edge_terms", validate_terms(self.inner_edge_terms))

    def stream_terms(self, stream: str) -> Terms:
        if stream == "new_node":
            return self.new_node_terms
        if stream == "inner_edge":
            return self.inner_edge_terms
        raise ValueError(f"unknown stream {stream!r}")

    def stream_free_parameters(self, stream: str) -> int:
        """Free parameters in one stream: pfp deltas plus mixture weights."""
        terms = self.stream_terms(stream)
        n_delta = sum(1 for _, c in terms if c.name == "pfp")
        return n_delta + (len(terms) - 1)

    @property
    def free_parameters(self) -> int:
        return self.stream_free_parameters("new_node") + self.stream_free_parameters(
            "inner_edge"
        )


def pure(component: Component) -> MixtureModel:
    """Single-component model applied to both streams."""
    return MixtureModel(((1.0, component),), ((1.0, component),))


def raw_weight(component: Component, degree: int, triangles: int) -> float:
    """Scalar attachment weight of one node under one component."""
    name = component.name
    if name == "null":
        return 1.0
    if name == "degree":
        return float(degree)
    if name == "triangle":
        return float(triangles)
    if name == "singleton":
        return 1.0 if degree == 1 else 0.0
    if name == "doubleton":
        return 1.0 if degree == 2 else 0.0
    # pfp: d ** (1 + delta * log10 d); equals 1 at d == 1 for any delta
    d = float(degree)
    return d ** (1.0 + component.delta * np.log10(d))


def raw_weights(component: Component, graph: "EvolvingGraph", candidates: np.ndarray) -> np.ndarray:
    """Vector of raw weights for the candidates, in candidate order."""
    name = component.name
    if name == "null":
        return np.ones(len(candidates))
    d = graph.degrees[candidates].astype(np.float64)
    if name == "degree":
        return d
    if name == "triangle":
        return graph.triangles[candidates].astype(np.float64)
    if name == "singleton":
        return (d == 1.0).astype(np.float64)
    if name == "doubleton":
        return (d == 2.0).astype(np.float64)
    logd = np.log10(d)
    return d ** (1.0 + component.delta * logd)


def component_probabilities(
    component: Component, graph: "EvolvingGraph", candidates: np.ndarray
) -> np.ndarray:
    """Normalised probabilities over the candidates for one component.

    Falls back to the uniform distribution when the component assigns zero
    total weight to the candidate set.
    """
    if len(candidates) == 0:
        raise ValueError("empty candidate set")
    w = raw_weights(component, graph, candidates)
    total = w.sum()
    if total == 0.0:
        return np.full(len(candidates), 1.0 / len(candidates))
    return w / total


def mixture_probabilities(
    terms: Sequence[tuple[float, Component]], graph: "EvolvingGraph", candidates: np.ndarray
) -> np.ndarray:
    """Convex combination of component probability vectors."""
    out = np.zeros(len(candidates))
    for weight, component in terms:
        out += weight * component_probabilities(component, graph, candidates)
    return out
