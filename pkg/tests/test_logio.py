"""Edge-list parsing, connected-order normalization, files, model specs."""

import pytest

from netgrowth import (
    DEGREE,
    DataError,
    ModelSpecError,
    NULL,
    NormalizeOptions,
    RawEdgeRecord,
    SINGLETON,
    normalize_connected_order,
    parse_edge_log,
    parse_model_spec,
    parse_terms,
    pfp,
    read_log,
    render_terms,
    write_log,
)
from netgrowth.logio import render_log
from conftest import IE, NN, NX, grow_log


def recs(*pairs):
    return [RawEdgeRecord(u, v) for u, v in pairs]


class TestParseEdgeLog:
    def test_plain(self):
        r = parse_edge_log(["1 2\n", "2 3\n"])
        assert [(x.u, x.v) for x in r.records] == [("1", "2"), ("2", "3")]

    def test_timestamped_stable_sort(self):
        r = parse_edge_log(["100 b a\n", "90 a c\n", "90 c d\n"], fmt="timestamped")
        assert [(x.u, x.v) for x in r.records] == [("a", "c"), ("c", "d"), ("b", "a")]

    def test_self_loops_counted(self):
        r = parse_edge_log(["1 1\n", "1 2\n"])
        assert len(r.records) == 1
        assert r.self_loops_dropped == 1

    def test_malformed_lines_reported(self):
        r = parse_edge_log(["1 2\n", "oops\n", "3 4 5\n"])
        assert len(r.records) == 1
        assert [lineno for lineno, _ in r.malformed] == [2, 3]

    def test_comments_and_header(self):
        r = parse_edge_log(["# tool format=1 seed_size=3\n", "a b\n"])
        assert r.header == {"format": "1", "seed_size": "3"}

    def test_empty_input_rejected(self):
        with pytest.raises(DataError):
            parse_edge_log(["# nothing\n"])

    def test_unknown_format_rejected(self):
        with pytest.raises(ValueError):
            parse_edge_log(["a b\n"], fmt="excel")


class TestNormalize:
    def test_delayed_edge_is_reordered(self):
        r = normalize_connected_order(recs(("A", "B"), ("C", "D"), ("B", "C")))
        pairs = [
            frozenset((r.log.labels[e.u], r.log.labels[e.v])) for e in r.log.events
        ]
        assert pairs == [
            frozenset(("A", "B")),
            frozenset(("B", "C")),
            frozenset(("C", "D")),
        ]
        assert r.delayed == 1
        assert not r.unplaced

    def test_duplicates_dropped(self):
        r = normalize_connected_order(recs(("A", "B"), ("A", "B"), ("B", "A")))
        assert len(r.log.events) == 1
        assert r.duplicates == 2

    def test_disconnected_remainder_reported(self):
        r = normalize_connected_order(recs(("A", "B"), ("C", "D")))
        assert len(r.log.events) == 1
        assert [(x.u, x.v) for x in r.unplaced] == [("C", "D")]

    def test_event_classification(self):
        r = normalize_connected_order(
            recs(("A", "B"), ("C", "A"), ("C", "B"), ("A", "B2"), ("B2", "C"))
        )
        kinds = [e.kind for e in r.log.events]
        # C arrives, then keeps attaching (extra); B2 arrives, then C-B2 is
        # an inner edge because B2's arrival group was closed by nothing new
        assert kinds == [NN, NN, NX, NN, NX]

    def test_inner_edge_between_settled_nodes(self):
        r = normalize_connected_order(
            recs(("A", "B"), ("C", "A"), ("D", "A"), ("C", "B"))
        )
        assert [e.kind for e in r.log.events] == [NN, NN, NN, IE]

    def test_survivor_filter(self):
        options = NormalizeOptions(
            survivors=frozenset({frozenset(("A", "B")), frozenset(("B", "C"))})
        )
        r = normalize_connected_order(recs(("A", "B"), ("A", "X"), ("B", "C")), options)
        assert len(r.log.events) == 2
        assert r.filtered == 1

    def test_warmup_trim(self):
        r = normalize_connected_order(
            recs(("X", "Y"), ("A", "B"), ("B", "C")), NormalizeOptions(warmup_events=1)
        )
        assert r.log.labels[:2] == ["A", "B"]

    def test_all_trimmed_rejected(self):
        with pytest.raises(DataError):
            normalize_connected_order(recs(("A", "B")), NormalizeOptions(warmup_events=5))

    def test_seed_size_recorded(self):
        r = normalize_connected_order(
            recs(("A", "B"), ("B", "C"), ("C", "D")), NormalizeOptions(seed_edges=2)
        )
        assert r.log.seed_size == 2


class TestLogFiles:
    def test_round_trip(self, tmp_path):
        log = grow_log(40, ((1.0, DEGREE),), rng_seed=6)
        path = str(tmp_path / "g.log")
        write_log(path, log)
        back = read_log(path)
        assert back.seed_size == log.seed_size
        assert [(e.u, e.v) for e in back.events] == [(e.u, e.v) for e in log.events]

    def test_idempotent_rendering(self, tmp_path):
        log = grow_log(30, ((1.0, NULL),), rng_seed=2)
        once = render_log(log)
        path = str(tmp_path / "g.log")
        write_log(path, log)
        assert render_log(read_log(path)) == once

    def test_header_line(self):
        log = grow_log(10, ((1.0, NULL),), rng_seed=0)
        first = render_log(log).splitlines()[0]
        assert "format=1" in first and "seed_size=1" in first

    def test_unconnectable_file_rejected(self, tmp_path):
        path = tmp_path / "bad.log"
        path.write_text("a b\nc d\n")
        with pytest.raises(DataError):
            read_log(str(path))


class TestModelSpecs:
    def test_weighted_mixture(self):
        terms = parse_terms("0.881*pfp(-0.22)+0.119*singleton")
        assert terms == ((0.881, pfp(-0.22)), (0.119, SINGLETON))

    def test_bare_atom_shorthand(self):
        assert parse_terms("null") == ((1.0, NULL),)
        assert parse_terms("degree") == ((1.0, DEGREE),)

    def test_whitespace_tolerated(self):
        terms = parse_terms("0.5*degree + 0.5*null")
        assert terms == ((0.5, DEGREE), (0.5, NULL))

    def test_bad_sum_rejected(self):
        with pytest.raises(ModelSpecError, match="1.2"):
            parse_terms("0.6*degree+0.6*null")

    def test_tiny_drift_renormalized(self):
        terms = parse_terms("0.3333333*degree+0.6666667*null")
        assert sum(w for w, _ in terms) == pytest.approx(1.0, abs=1e-12)

    def test_unknown_atom_position_reported(self):
        with pytest.raises(ModelSpecError, match="term 2"):
            parse_terms("0.5*degree+0.5*frob")

    def test_missing_weight_in_multi_term(self):
        with pytest.raises(ModelSpecError):
            parse_terms("degree+null")

    def test_empty_spec(self):
        with pytest.raises(ModelSpecError):
            parse_terms("")

    def test_render_round_trip(self):
        for text in ("null", "0.881*pfp(-0.22)+0.119*singleton", "0.5*degree+0.5*null"):
            terms = parse_terms(text)
            assert parse_terms(render_terms(terms)) == terms

    def test_parse_model_spec_two_streams(self):
        model = parse_model_spec("degree", "0.5*null+0.5*triangle")
        assert model.new_node_terms == ((1.0, DEGREE),)
        assert len(model.inner_edge_terms) == 2
