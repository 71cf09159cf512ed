"""Summary statistics used to compare generated topologies against targets.

Degree-distribution measures (fraction of degree-1 and degree-2 nodes, mean
square degree, maximum degree), the assortativity coefficient over oriented
edge endpoints, and the mean clustering coefficient over nodes of degree at
least two.  Statistics that are undefined for a graph (zero degree variance,
no qualifying node) are reported as None, never as zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import EvolvingGraph


@dataclass(frozen=True)
class StatsSummary:
    node_count: int
    edge_count: int
    frac_degree_1: float
    frac_degree_2: float
    mean_square_degree: float
    max_degree: int
    mean_degree: float
    assortativity: float | None
    mean_clustering: float | None


def degree_stats(graph: EvolvingGraph) -> tuple[float, float, float, int, float]:
    """(d1, d2, mean square degree, max degree, mean degree)."""
    if graph.node_count == 0:
        raise ValueError("empty graph")
    d = graph.degrees.astype(np.float64)
    n = graph.node_count
    return (
        float(np.count_nonzero(d == 1.0)) / n,
        float(np.count_nonzero(d == 2.0)) / n,
        float(np.mean(d * d)),
        int(d.max()),
        float(d.mean()),
    )


def assortativity(graph: EvolvingGraph) -> float | None:
    """Pearson correlation of endpoint degrees over oriented edges.

    Both orientations of every edge are included, so the two marginals
    coincide.  None when the endpoint-degree variance is zero.
    """
    if graph.edge_count == 0:
        raise ValueError("graph has no edges")
    edges = np.array(list(graph.edges()), dtype=np.int64)
    du = graph.degrees[edges[:, 0]].astype(np.float64)
    dv = graph.degrees[edges[:, 1]].astype(np.float64)
    x = np.concatenate([du, dv])
    y = np.concatenate([dv, du])
    var = np.mean(x * x) - np.mean(x) ** 2
    if var == 0.0:
        return None
    cov = np.mean(x * y) - np.mean(x) * np.mean(y)
    return float(cov / var)


def mean_clustering(graph: EvolvingGraph) -> float | None:
    """Mean of t_i / C(d_i, 2) over nodes with degree >= 2; None if none qualify."""
    if graph.node_count == 0:
        raise ValueError("empty graph")
    d = graph.degrees.astype(np.float64)
    mask = d >= 2.0
    if not mask.any():
        return None
    t = graph.triangles.astype(np.float64)[mask]
    potential = d[mask] * (d[mask] - 1.0) / 2.0
    return float(np.mean(t / potential))


def summary(graph: EvolvingGraph) -> StatsSummary:
    d1, d2, msq, dmax, dmean = degree_stats(graph)
    return StatsSummary(
        node_count=graph.node_count,
        edge_count=graph.edge_count,
        frac_degree_1=d1,
        frac_degree_2=d2,
        mean_square_degree=msq,
        max_degree=dmax,
        mean_degree=dmean,
        assortativity=assortativity(graph) if graph.edge_count else None,
        mean_clustering=mean_clustering(graph),
    )
