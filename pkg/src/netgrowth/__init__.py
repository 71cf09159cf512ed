"""Likelihood-based evaluation, fitting and generation of network-growth models."""

from .components import (
    Component,
    DEGREE,
    DOUBLETON,
    MixtureModel,
    NULL,
    SINGLETON,
    TRIANGLE,
    component_probabilities,
    mixture_probabilities,
    pfp,
    pure,
    raw_weight,
)
from .fitting import (
    ChoiceDataset,
    DeltaGrid,
    FitResult,
    SamplingPolicy,
    build_dataset,
    fit_mixture,
    scan_delta,
)
from .generate import (
    GrowthRecipe,
    GrowthResult,
    OuterModel,
    estimate_outer_model,
    grow,
    sample_choice,
    single_edge_seed,
)
from .graph import (
    ArrivalEvent,
    ArrivalLog,
    EventKind,
    EvolvingGraph,
    LogViolation,
    build_graph,
    replay,
)
from .likelihood import (
    LikelihoodReport,
    StreamReport,
    aic,
    choice_likelihood,
    edge_choice_likelihood,
    evaluate,
)
from .logio import (
    DataError,
    ModelSpecError,
    NormalizeOptions,
    RawEdgeRecord,
    normalize_connected_order,
    parse_edge_log,
    parse_model_spec,
    parse_terms,
    read_log,
    render_terms,
    write_log,
)
from .netstats import StatsSummary, assortativity, degree_stats, mean_clustering, summary

__version__ = "0.1.0"
