"""Edge-list ingestion, connected-order normalization and on-disk formats.

Raw input is a line-oriented edge list (``u v`` in arrival order, or
``t u v`` with an integer timestamp).  Normalization turns it into a valid
arrival log: labels become dense integer ids in first-seen order, duplicate
edges are dropped, and an edge that would disconnect the growing structure
is queued and retried in FIFO order after each successful insertion.
Records that never connect are reported as unplaced.

Normalized logs are written back as plain edge lists with a header comment
carrying the format version and seed size, so they round-trip exactly.
"""

from __future__ import annotations

import os
import re
import tempfile
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .components import Component, MixtureModel, Terms, pfp, validate_terms
from .graph import ArrivalEvent, ArrivalLog, EventKind

FORMAT_VERSION = 1
_HEADER_TAG = "netgrowth-log"


class DataError(Exception):
    """Unusable input data (empty, malformed beyond recovery, disconnected)."""


class ModelSpecError(ValueError):
    """A model-spec expression that does not parse or violates weight rules."""


# ---------------------------------------------------------------------------
# Raw edge records
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RawEdgeRecord:
    u: str
    v: str
    timestamp: int | None = None


@dataclass
class ParseResult:
    records: list[RawEdgeRecord]
    malformed: list[tuple[int, str]] = field(default_factory=list)
    self_loops_dropped: int = 0
    header: dict[str, str] = field(default_factory=dict)


def parse_edge_log(lines: Iterable[str], fmt: str = "plain") -> ParseResult:
    """Parse a plain or timestamped edge list; sorting is stable on ties."""
    if fmt not in ("plain", "timestamped"):
        raise ValueError(f"unknown format {fmt!r}")
    result = ParseResult(records=[])
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            for token in stripped[1:].split():
                if "=" in token:
                    key, _, value = token.partition("=")
                    result.header[key] = value
            continue
        fields = stripped.split()
        try:
            if fmt == "plain":
                if len(fields) != 2:
                    raise ValueError
                ts, u, v = None, fields[0], fields[1]
            else:
                if len(fields) != 3:
                    raise ValueError
                ts, u, v = int(fields[0]), fields[1], fields[2]
        except ValueError:
            result.malformed.append((lineno, stripped))
            continue
        if u == v:
            result.self_loops_dropped += 1
            continue
        result.records.append(RawEdgeRecord(u, v, ts))
    if not result.records:
        raise DataError("no valid edge records in input")
    if fmt == "timestamped":
        result.records.sort(key=lambda r: r.timestamp)  # stable: ties keep file order
    return result


# ---------------------------------------------------------------------------
# Connected-order normalization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NormalizeOptions:
    seed_edges: int = 1
    warmup_events: int = 0
    warmup_timestamp: int | None = None
    survivors: frozenset[frozenset[str]] | None = None


@dataclass
class NormalizeResult:
    log: ArrivalLog
    duplicates: int = 0
    delayed: int = 0
    unplaced: list[RawEdgeRecord] = field(default_factory=list)
    filtered: int = 0


def normalize_connected_order(
    records: Sequence[RawEdgeRecord], options: NormalizeOptions = NormalizeOptions()
) -> NormalizeResult:
    """Order records into a connected arrival log with dense node ids.

    Events are classified NEW_NODE / NEW_NODE_EXTRA / INNER_EDGE by whether
    an endpoint is unseen; consecutive records that keep attaching the same
    newly arrived node are grouped as its extra attachments.
    """
    records = list(records[options.warmup_events :])
    if options.warmup_timestamp is not None:
        records = [
            r
            for r in records
            if r.timestamp is None or r.timestamp >= options.warmup_timestamp
        ]
    filtered = 0
    if options.survivors is not None:
        kept = [r for r in records if frozenset((r.u, r.v)) in options.survivors]
        filtered = len(records) - len(kept)
        records = kept
    if not records:
        raise DataError("no records left after trimming")

    ids: dict[str, int] = {}
    labels: list[str] = []
    events: list[ArrivalEvent] = []
    adjacency: list[set[int]] = []
    accepted: set[frozenset[str]] = set()
    pending: deque[RawEdgeRecord] = deque()
    result = NormalizeResult(log=ArrivalLog(seed_size=0), filtered=filtered)
    open_new: int | None = None

    def seen(label: str) -> bool:
        return label in ids

    def assign(label: str) -> int:
        ids[label] = len(labels)
        labels.append(label)
        adjacency.append(set())
        return ids[label]

    def insertable(rec: RawEdgeRecord) -> bool:
        if not events:
            return True
        return seen(rec.u) or seen(rec.v)

    def emit(rec: RawEdgeRecord) -> None:
        nonlocal open_new
        u_seen, v_seen = seen(rec.u), seen(rec.v)
        if not u_seen and not v_seen:
            assign(rec.u)
            assign(rec.v)
            events.append(ArrivalEvent(EventKind.NEW_NODE, 0, 1))
            open_new = None
        elif u_seen != v_seen:
            new_label, old_label = (rec.v, rec.u) if u_seen else (rec.u, rec.v)
            old_id = ids[old_label]
            new_id = assign(new_label)
            events.append(ArrivalEvent(EventKind.NEW_NODE, new_id, old_id))
            open_new = new_id
        else:
            uid, vid = ids[rec.u], ids[rec.v]
            if open_new is not None and open_new in (uid, vid):
                other = vid if uid == open_new else uid
                events.append(ArrivalEvent(EventKind.NEW_NODE_EXTRA, open_new, other))
            else:
                events.append(ArrivalEvent(EventKind.INNER_EDGE, uid, vid))
                open_new = None
        a, b = ids[rec.u], ids[rec.v]
        adjacency[a].add(b)
        adjacency[b].add(a)

    def drain() -> None:
        while True:
            for idx, rec in enumerate(pending):
                if insertable(rec):
                    del pending[idx]
                    emit(rec)
                    break
            else:
                return

    for rec in records:
        key = frozenset((rec.u, rec.v))
        if key in accepted:
            result.duplicates += 1
            continue
        accepted.add(key)
        if insertable(rec):
            emit(rec)
            drain()
        else:
            pending.append(rec)
            result.delayed += 1

    result.unplaced = list(pending)
    result.log = ArrivalLog(
        seed_size=min(max(options.seed_edges, 0), len(events)), events=events, labels=labels
    )
    return result


# ---------------------------------------------------------------------------
# Log files
# ---------------------------------------------------------------------------


def atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-netgrowth-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def render_log(log: ArrivalLog) -> str:
    def label(i: int) -> str:
        return log.labels[i] if log.labels is not None else str(i)

    lines = [f"# {_HEADER_TAG} format={FORMAT_VERSION} seed_size={log.seed_size}"]
    for event in log.events:
        lines.append(f"{label(event.u)} {label(event.v)}")
    return "\n".join(lines) + "\n"


def write_log(path: str, log: ArrivalLog) -> None:
    atomic_write(path, render_log(log))


def read_log(path: str) -> ArrivalLog:
    """Read a normalized (or plain, already-ordered) edge-log file."""
    with open(path, encoding="utf-8") as handle:
        parsed = parse_edge_log(handle, fmt="plain")
    seed = int(parsed.header.get("seed_size", 1))
    result = normalize_connected_order(parsed.records, NormalizeOptions(seed_edges=seed))
    if result.unplaced:
        raise DataError(f"{len(result.unplaced)} records cannot connect in {path}")
    return result.log


# ---------------------------------------------------------------------------
# Model-spec text
# ---------------------------------------------------------------------------

_PFP_RE = re.compile(r"^pfp\(([-+]?[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\)$")
_SIMPLE_ATOMS = {"null", "degree", "triangle", "singleton", "doubleton"}


def _parse_atom(text: str, position: int) -> Component:
    if text in _SIMPLE_ATOMS:
        return Component(text)
    match = _PFP_RE.match(text)
    if match:
        return pfp(float(match.group(1)))
    raise ModelSpecError(f"unknown component {text!r} at term {position + 1}")


def parse_terms(text: str) -> Terms:
    """Parse ``w*atom + w*atom`` (single bare atom means weight 1)."""
    parts = text.replace(" ", "").split("+")
    if not parts or not parts[0]:
        raise ModelSpecError("empty model spec")
    raw: list[tuple[float, Component]] = []
    for position, part in enumerate(parts):
        if "*" in part:
            weight_text, _, atom_text = part.partition("*")
            try:
                weight = float(weight_text)
            except ValueError:
                raise ModelSpecError(f"bad weight {weight_text!r} at term {position + 1}") from None
        else:
            if len(parts) > 1:
                raise ModelSpecError(f"term {position + 1} ({part!r}) is missing a weight")
            weight, atom_text = 1.0, part
        if not 0.0 <= weight <= 1.0 + 1e-6:
            raise ModelSpecError(f"weight {weight} outside [0, 1] at term {position + 1}")
        raw.append((weight, _parse_atom(atom_text, position)))
    total = sum(w for w, _ in raw)
    if abs(total - 1.0) > 1e-6:
        raise ModelSpecError(f"weights sum to {total:g}, expected 1")
    if abs(total - 1.0) > 1e-9:
        raw = [(w / total, c) for w, c in raw]
    return validate_terms(raw)


def render_terms(terms: Terms) -> str:
    if len(terms) == 1 and terms[0][0] == 1.0:
        return str(terms[0][1])
    return "+".join(f"{w!r}*{c}" for w, c in terms)


def parse_model_spec(new_node_text: str, inner_edge_text: str) -> MixtureModel:
    return MixtureModel(parse_terms(new_node_text), parse_terms(inner_edge_text))
