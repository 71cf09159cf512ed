"""Attachment components, mixtures, and their probability vectors."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netgrowth import (
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
from netgrowth.components import Component, raw_weights, validate_terms
from conftest import random_connected_graph

ALL_KINDS = [NULL, DEGREE, TRIANGLE, SINGLETON, DOUBLETON, pfp(0.05), pfp(-0.3)]


class TestRawWeight:
    def test_pfp_zero_equals_degree(self):
        assert raw_weight(pfp(0.0), 5, 0) == 5.0

    def test_pfp_positive_feedback(self):
        # 10 ** 1.05, computed independently
        assert raw_weight(pfp(0.05), 10, 0) == pytest.approx(10 ** 1.05, abs=1e-12)
        assert raw_weight(pfp(0.05), 10, 0) == pytest.approx(11.220184543, abs=1e-6)

    def test_singleton_doubleton_indicators(self):
        assert raw_weight(SINGLETON, 1, 0) == 1.0
        assert raw_weight(SINGLETON, 2, 0) == 0.0
        assert raw_weight(DOUBLETON, 2, 5) == 1.0
        assert raw_weight(DOUBLETON, 3, 5) == 0.0

    def test_null_and_degree_and_triangle(self):
        assert raw_weight(NULL, 7, 3) == 1.0
        assert raw_weight(DEGREE, 7, 3) == 7.0
        assert raw_weight(TRIANGLE, 7, 3) == 3.0

    def test_pfp_is_one_at_degree_one_for_any_delta(self):
        for delta in (-1.8, -0.22, 0.0, 0.04, 2.5):
            assert raw_weight(pfp(delta), 1, 0) == 1.0

    def test_component_validation(self):
        with pytest.raises(ValueError):
            Component("frobnicate")
        with pytest.raises(ValueError):
            Component("pfp")  # missing delta
        with pytest.raises(ValueError):
            Component("degree", delta=0.3)
        with pytest.raises(ValueError):
            Component("pfp", delta=math.inf)


class TestComponentProbabilities:
    def test_degree_on_path(self, path3):
        p = component_probabilities(DEGREE, path3, path3.first_choice_candidates())
        assert p == pytest.approx([0.25, 0.5, 0.25], abs=1e-12)

    def test_triangle_fallback_to_uniform(self, path3):
        p = component_probabilities(TRIANGLE, path3, path3.first_choice_candidates())
        assert p == pytest.approx([1 / 3, 1 / 3, 1 / 3], abs=1e-12)

    def test_singleton_on_path(self, path3):
        p = component_probabilities(SINGLETON, path3, path3.first_choice_candidates())
        assert p == pytest.approx([0.5, 0.0, 0.5], abs=1e-12)

    def test_empty_candidates_rejected(self, path3):
        with pytest.raises(ValueError):
            component_probabilities(NULL, path3, np.array([], dtype=np.int64))

    def test_singleton_candidate_set_forces_probability_one(self, path3):
        for kind in ALL_KINDS:
            p = component_probabilities(kind, path3, np.array([1]))
            assert p == pytest.approx([1.0], abs=0)


class TestMixtureProbabilities:
    def test_half_null_half_degree(self, path3):
        terms = ((0.5, NULL), (0.5, DEGREE))
        p = mixture_probabilities(terms, path3, path3.first_choice_candidates())
        assert p == pytest.approx([7 / 24, 5 / 12, 7 / 24], abs=1e-12)

    def test_single_term_equals_component(self, path3):
        cands = path3.first_choice_candidates()
        a = mixture_probabilities(((1.0, DEGREE),), path3, cands)
        b = component_probabilities(DEGREE, path3, cands)
        assert a == pytest.approx(b, abs=0)

    def test_pfp_singleton_mixture_is_a_distribution(self):
        terms = validate_terms(((0.881, pfp(-0.22)), (0.119, SINGLETON)))
        for seed in range(3):
            g = random_connected_graph(seed)
            p = mixture_probabilities(terms, g, g.first_choice_candidates())
            assert p.min() >= 0.0
            assert p.sum() == pytest.approx(1.0, abs=1e-9)


class TestMixtureModel:
    def test_weights_must_sum_to_one(self):
        with pytest.raises(ValueError):
            MixtureModel(((0.6, DEGREE), (0.6, NULL)), ((1.0, NULL),))

    def test_weights_must_be_in_unit_interval(self):
        with pytest.raises(ValueError):
            MixtureModel(((1.5, DEGREE), (-0.5, NULL)), ((1.0, NULL),))

    def test_empty_stream_rejected(self):
        with pytest.raises(ValueError):
            MixtureModel((), ((1.0, NULL),))

    def test_free_parameter_count(self):
        m = MixtureModel(((0.9, pfp(0.05)), (0.1, SINGLETON)), ((1.0, NULL),))
        assert m.stream_free_parameters("new_node") == 2  # one delta + one free weight
        assert m.stream_free_parameters("inner_edge") == 0
        assert m.free_parameters == 2

    def test_pure_helper(self):
        m = pure(DEGREE)
        assert m.new_node_terms == ((1.0, DEGREE),)
        assert m.inner_edge_terms == ((1.0, DEGREE),)
        assert m.free_parameters == 0


@st.composite
def _graph_and_terms(draw):
    graph = random_connected_graph(draw(st.integers(0, 200)))
    k = draw(st.integers(1, 3))
    kinds = [ALL_KINDS[i] for i in draw(
        st.lists(st.integers(0, len(ALL_KINDS) - 1), min_size=k, max_size=k, unique=True)
    )]
    raw = draw(st.lists(st.floats(0.05, 1.0), min_size=k, max_size=k))
    total = sum(raw)
    terms = tuple((w / total, c) for w, c in zip(raw, kinds))
    return graph, terms


class TestDistributionProperties:
    @given(_graph_and_terms())
    @settings(max_examples=40, deadline=None)
    def test_mixtures_are_distributions_on_random_states(self, graph_and_terms):
        graph, terms = graph_and_terms
        p = mixture_probabilities(terms, graph, graph.first_choice_candidates())
        assert p.min() >= 0.0
        assert abs(p.sum() - 1.0) < 1e-9

    @given(st.integers(0, 100))
    @settings(max_examples=25, deadline=None)
    def test_pfp_zero_matches_degree(self, seed):
        graph = random_connected_graph(seed)
        cands = graph.first_choice_candidates()
        a = component_probabilities(pfp(0.0), graph, cands)
        b = component_probabilities(DEGREE, graph, cands)
        assert np.max(np.abs(a - b)) < 1e-12

    @given(st.integers(0, 100))
    @settings(max_examples=25, deadline=None)
    def test_degree_monotonicity(self, seed):
        graph = random_connected_graph(seed)
        cands = graph.first_choice_candidates()
        p = component_probabilities(DEGREE, graph, cands)
        deg = graph.degrees[cands]
        for i in range(len(cands)):
            for j in range(len(cands)):
                if deg[i] > deg[j]:
                    assert p[i] > p[j]

    def test_zero_mass_fallback_engages_exactly_when_mass_is_zero(self):
        graph = random_connected_graph(3)
        cands = graph.first_choice_candidates()
        for kind in ALL_KINDS:
            w = raw_weights(kind, graph, cands)
            p = component_probabilities(kind, graph, cands)
            if w.sum() == 0.0:
                assert p == pytest.approx(np.full(len(cands), 1 / len(cands)), abs=0)
            else:
                assert p == pytest.approx(w / w.sum(), abs=0)
