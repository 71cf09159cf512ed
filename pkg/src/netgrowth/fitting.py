"""Mixture-weight estimation and PFP delta scanning.

Weights are fitted by regressing the pick indicator on the per-component
probability columns: for every choice in the window, each candidate node
contributes one row holding the component probabilities and a 0/1 indicator
for whether it was the node actually picked.  The expected indicator equals
the mixture probability, so the least-squares optimum targets the mixture
weights directly.  Because the indicator is binary its variance scales with
the probability itself, so the regression is solved by iteratively
reweighted least squares: rows are weighted by the inverse of the current
fitted probability, each step constrained non-negative (Lawson-Hanson NNLS
on the normal equations) and renormalised to sum to one.  The fixed point
of that iteration is the maximum-likelihood mixture.  Standard errors and
significance come from the unweighted unconstrained solution and are
advisory.

Large candidate sets make exhaustive row tables infeasible, so above a row
budget only a seeded uniform sample of negative rows is kept, each carrying
an importance weight that restores the exhaustive least-squares objective
in expectation.

The PFP exponent parameter cannot be fitted linearly; ``scan_delta``
maximises the per-choice likelihood ratio over a coarse grid refined
recursively around the best point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.optimize

from .components import (
    Component,
    MixtureModel,
    Terms,
    component_probabilities,
    NULL,
    pfp,
)
from .graph import ArrivalLog, EventKind, EvolvingGraph
from .likelihood import evaluate

_NULL_TERMS: Terms = ((1.0, NULL),)


@dataclass(frozen=True)
class SamplingPolicy:
    """Negative-sampling policy for dataset construction."""

    max_exhaustive_rows: int = 5_000_000
    negatives_per_choice: int = 50
    rng_seed: int = 0


@dataclass
class ChoiceDataset:
    """Indicator-regression rows for one operation stream.

    Parallel arrays: ``choice_index`` numbers the choices consecutively,
    ``candidate`` holds the node id of the row, ``columns`` the component
    probabilities (one column per component), ``indicator`` the 0/1 pick
    flag and ``row_weight`` the importance weight (1 unless down-sampled).
    The source log and window are retained so fits can be re-scored by the
    likelihood engine.
    """

    components: tuple[Component, ...]
    stream: str
    choice_index: np.ndarray
    candidate: np.ndarray
    columns: np.ndarray
    indicator: np.ndarray
    row_weight: np.ndarray
    choice_count: int
    downsampled: bool
    log: ArrivalLog
    window: tuple[int, int]

    @property
    def row_count(self) -> int:
        return len(self.indicator)


def _stream_choices(graph: EvolvingGraph, event, stream: str):
    """Candidate-set/chosen pairs this event contributes to the stream."""
    if stream == "new_node":
        if event.kind is EventKind.NEW_NODE:
            if graph.node_count == 0:
                return []  # bootstrap edge involves no choice
            return [(graph.first_choice_candidates(), event.v)]
        if event.kind is EventKind.NEW_NODE_EXTRA:
            return [(graph.second_choice_candidates(event.u), event.v)]
        return []
    if stream == "inner_edge":
        if event.kind is EventKind.INNER_EDGE:
            return [
                (graph.first_choice_candidates(), event.u),
                (graph.second_choice_candidates(event.u), event.v),
            ]
        return []
    raise ValueError(f"unknown stream {stream!r}")


def build_dataset(
    components: list[Component] | tuple[Component, ...],
    log: ArrivalLog,
    window: tuple[int, int] | None = None,
    stream: str = "new_node",
    sampling: SamplingPolicy = SamplingPolicy(),
) -> ChoiceDataset:
    """Replay the window and emit one regression row per candidate per choice."""
    components = tuple(components)
    if not components:
        raise ValueError("components must be non-empty")
    start, stop = window if window is not None else (log.seed_size, len(log.events))

    # cheap pre-pass: total exhaustive row count decides the policy
    graph = EvolvingGraph()
    total_rows = 0
    for i, event in enumerate(log.events[:stop]):
        if i >= start:
            if stream == "new_node":
                if event.kind is EventKind.NEW_NODE and graph.node_count > 0:
                    total_rows += graph.node_count
                elif event.kind is EventKind.NEW_NODE_EXTRA:
                    total_rows += graph.node_count - 1 - graph.degree(event.u)
            elif event.kind is EventKind.INNER_EDGE:
                total_rows += 2 * graph.node_count - 1 - graph.degree(event.u)
        graph.apply_event(event, index=i)
    downsample = total_rows > sampling.max_exhaustive_rows
    rng = np.random.default_rng(sampling.rng_seed)

    idx_parts: list[np.ndarray] = []
    cand_parts: list[np.ndarray] = []
    col_parts: list[np.ndarray] = []
    y_parts: list[np.ndarray] = []
    w_parts: list[np.ndarray] = []
    choice_count = 0

    graph = EvolvingGraph()
    for i, event in enumerate(log.events[:stop]):
        if i >= start:
            for candidates, chosen in _stream_choices(graph, event, stream):
                n = len(candidates)
                cols = np.column_stack(
                    [component_probabilities(c, graph, candidates) for c in components]
                )
                chosen_pos = int(np.flatnonzero(candidates == chosen)[0])
                if downsample and n - 1 > sampling.negatives_per_choice:
                    keep_neg = sampling.negatives_per_choice
                    neg_pos = rng.choice(n - 1, size=keep_neg, replace=False)
                    neg_pos[neg_pos >= chosen_pos] += 1  # skip the picked row
                    rows = np.concatenate([[chosen_pos], neg_pos])
                    weights = np.full(keep_neg + 1, (n - 1) / keep_neg)
                    weights[0] = 1.0
                else:
                    rows = np.arange(n)
                    weights = np.ones(n)
                y = (candidates[rows] == chosen).astype(np.float64)
                idx_parts.append(np.full(len(rows), choice_count, dtype=np.int64))
                cand_parts.append(candidates[rows])
                col_parts.append(cols[rows])
                y_parts.append(y)
                w_parts.append(weights)
                choice_count += 1
        graph.apply_event(event, index=i)

    if choice_count == 0:
        empty_f = np.empty((0, len(components)))
        empty_i = np.empty(0, dtype=np.int64)
        return ChoiceDataset(
            components, stream, empty_i, empty_i, empty_f,
            np.empty(0), np.empty(0), 0, downsample, log, (start, stop),
        )
    return ChoiceDataset(
        components=components,
        stream=stream,
        choice_index=np.concatenate(idx_parts),
        candidate=np.concatenate(cand_parts),
        columns=np.vstack(col_parts),
        indicator=np.concatenate(y_parts),
        row_weight=np.concatenate(w_parts),
        choice_count=choice_count,
        downsampled=downsample,
        log=log,
        window=(start, stop),
    )


CONDITION_LIMIT = 1e8


@dataclass(frozen=True)
class FitResult:
    components: tuple[Component, ...]
    betas: tuple[float, ...]
    standard_errors: tuple[float, ...]
    significant: tuple[bool, ...]
    fit_deviance: float
    condition_warning: bool = False
    fallback_warning: bool = False

    @property
    def terms(self) -> Terms:
        return tuple((b, c) for b, c in zip(self.betas, self.components))


def _stream_model(terms: Terms, stream: str) -> MixtureModel:
    if stream == "new_node":
        return MixtureModel(terms, _NULL_TERMS)
    return MixtureModel(_NULL_TERMS, terms)


def _stream_deviance(terms: Terms, dataset: ChoiceDataset) -> float:
    model = _stream_model(terms, dataset.stream)
    report = evaluate(model, dataset.log, window=dataset.window)
    return report.stream(dataset.stream).deviance


def _nnls_normal(gram: np.ndarray, xy: np.ndarray) -> np.ndarray:
    """Non-negative solution of the normal equations via eigen-factoring."""
    vals, vecs = np.linalg.eigh(gram)
    keep = vals > max(vals.max(), 0.0) * 1e-14
    root = np.sqrt(vals[keep])
    a = root[:, None] * vecs[:, keep].T
    b = (vecs[:, keep].T @ xy) / root
    beta, _ = scipy.optimize.nnls(a, b)
    return beta


_IRLS_MAX_ITER = 50
_PROB_FLOOR = 1e-10


def fit_mixture(dataset: ChoiceDataset) -> FitResult:
    """Constrained, probability-weighted least-squares mixture estimate."""
    if dataset.choice_count == 0:
        raise ValueError("empty dataset")
    k = len(dataset.components)
    if k == 1:
        terms = ((1.0, dataset.components[0]),)
        return FitResult(
            dataset.components, (1.0,), (0.0,), (True,), _stream_deviance(terms, dataset)
        )

    x = dataset.columns
    y = dataset.indicator
    w = dataset.row_weight
    xw = x * w[:, None]
    gram = xw.T @ x
    xy = xw.T @ y
    condition_warning = bool(np.linalg.cond(gram) > CONDITION_LIMIT)

    # unconstrained solution for standard errors / significance
    beta_u, *_ = np.linalg.lstsq(gram, xy, rcond=None)
    rss = float(w @ (y * y)) - 2.0 * float(beta_u @ xy) + float(beta_u @ gram @ beta_u)
    dof = max(float(w.sum()) - k, 1.0)
    sigma2 = max(rss, 0.0) / dof
    cov = sigma2 * np.linalg.pinv(gram)
    stderr = np.sqrt(np.maximum(np.diag(cov), 0.0))
    significant = np.abs(beta_u) > 2.0 * stderr

    # IRLS: weight each row by 1 / fitted probability and re-solve under the
    # non-negativity constraint; the fixed point maximises the likelihood
    fallback_warning = False
    beta_nn = np.full(k, 1.0 / k)
    for _ in range(_IRLS_MAX_ITER):
        fitted = np.clip(x @ beta_nn, _PROB_FLOOR, None)
        wi = w / fitted
        xwi = x * wi[:, None]
        candidate = _nnls_normal(xwi.T @ x, xwi.T @ y)
        total = candidate.sum()
        if total <= 0.0:
            fallback_warning = True
            break
        candidate /= total
        converged = np.abs(candidate - beta_nn).max() < 1e-10
        beta_nn = candidate
        if converged:
            break

    if fallback_warning:
        # nothing explains the picks positively: best single component wins
        best = min(
            range(k),
            key=lambda j: _stream_deviance(((1.0, dataset.components[j]),), dataset),
        )
        beta_nn = np.zeros(k)
        beta_nn[best] = 1.0

    terms = tuple((float(b_), c) for b_, c in zip(beta_nn, dataset.components))
    return FitResult(
        components=dataset.components,
        betas=tuple(float(v) for v in beta_nn),
        standard_errors=tuple(float(v) for v in stderr),
        significant=tuple(bool(v) for v in significant),
        fit_deviance=_stream_deviance(terms, dataset),
        condition_warning=condition_warning,
        fallback_warning=fallback_warning,
    )


@dataclass(frozen=True)
class DeltaGrid:
    """Coarse range and recursive refinement for the PFP exponent scan.

    Defaults span the plausible exponent range at a final resolution of
    coarse_step / 10**refine_levels.
    """

    lo: float = -2.5
    hi: float = 2.5
    coarse_step: float = 0.1
    refine_levels: int = 2

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise ValueError("grid needs lo < hi")
        if self.coarse_step <= 0:
            raise ValueError("coarse_step must be positive")


@dataclass
class ScanResult:
    best_delta: float
    best_ratio: float
    table: list[tuple[float, float, float]] = field(default_factory=list)  # (delta, c0, D)


def scan_delta(
    base_terms: Terms,
    log: ArrivalLog,
    window: tuple[int, int] | None = None,
    stream: str = "new_node",
    grid: DeltaGrid = DeltaGrid(),
) -> ScanResult:
    """Maximise the per-choice likelihood ratio over the PFP delta.

    ``base_terms`` must contain exactly one pfp term; its delta is replaced
    at every grid point.  Deterministic given the grid.
    """
    pfp_slots = [i for i, (_, c) in enumerate(base_terms) if c.name == "pfp"]
    if len(pfp_slots) != 1:
        raise ValueError("base_terms must contain exactly one pfp component")
    slot = pfp_slots[0]

    cache: dict[float, tuple[float, float]] = {}

    def score(delta: float) -> tuple[float, float]:
        delta = round(delta, 10)
        if delta not in cache:
            terms = tuple(
                (w, pfp(delta) if i == slot else c) for i, (w, c) in enumerate(base_terms)
            )
            rep = evaluate(_stream_model(terms, stream), log, window=window).stream(stream)
            cache[delta] = (rep.per_choice_ratio, rep.deviance)
        return cache[delta]

    def grid_points(lo: float, hi: float, step: float) -> np.ndarray:
        n = int(round((hi - lo) / step))
        return np.round(lo + step * np.arange(n + 1), 10)

    step = grid.coarse_step
    points = grid_points(grid.lo, grid.hi, step)
    for d in points:
        score(float(d))
    best = max(cache, key=lambda d: cache[d][0])
    for _ in range(grid.refine_levels):
        lo, hi = best - step, best + step
        step /= 10.0
        for d in grid_points(lo, hi, step):
            score(float(d))
        best = max(cache, key=lambda d: cache[d][0])

    if not math.isfinite(cache[best][1]):
        raise ValueError("every grid point has infinite deviance; the family cannot explain the data")
    table = [(d, c0, dev) for d, (c0, dev) in sorted(cache.items())]
    return ScanResult(best_delta=best, best_ratio=cache[best][0], table=table)
