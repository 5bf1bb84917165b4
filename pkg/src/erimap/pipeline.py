"""Observation ingest, per-area belief timelines, and replay.

The engine owns one immutable network, one evidence state per area, and an
append-only timeline of belief snapshots. Each accepted observation is
classified once, applied to every addressed area (copy-on-write: either the
whole observation commits, or nothing does), and followed by a recompute of
the key-node marginals of the affected areas, emitting one snapshot per
area. The engine halts once every key node is confirmed by hard evidence in
every area.

Batch replay sorts by (time, id) and is fully deterministic; a failing
observation is recorded and skipped, never aborting the run. Live ingest
processes arrival order as-is and only warns on timestamp regressions.
"""

from __future__ import annotations

import csv
import io
import logging
import threading
from dataclasses import dataclass, field
from datetime import datetime
from typing import Callable, Iterable, Mapping, Sequence

from .bn import Distribution, ValidatedNetwork
from .errors import (
    EngineHalted,
    ErimapError,
    HardEvidenceConflict,
    UnknownArea,
)
from .evidence import (
    Hard,
    RegretPolicy,
    ReliabilityScore,
    Soft,
    Virtual,
    classify,
    soft_to_virtual,
)
from .observations import Observation, format_time
from .spatial import Area, AreaState, instantiate_areas

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BeliefSnapshot:
    """Per-area key-node marginals after one processed observation.

    ``seq`` counts snapshots per area, gap-free from 0 (the prior snapshot
    emitted before any observation, with no time and no trigger).
    """

    seq: int
    time: datetime | None
    area_id: str
    marginals: Mapping[str, Distribution]
    trigger: str | None

    def to_json_dict(self, net: ValidatedNetwork) -> dict:
        return {
            "seq": self.seq,
            "time": format_time(self.time) if self.time else None,
            "area_id": self.area_id,
            "trigger": self.trigger,
            "marginals": {
                node: dist.as_dict(net.states(node))
                for node, dist in self.marginals.items()
            },
        }


@dataclass
class ReplayResult:
    snapshots: list[BeliefSnapshot]
    errors: list[tuple[str, str, str]] = field(default_factory=list)  # (obs id, code, message)


class Engine:
    """Single-site belief engine: one network, many areas, one timeline."""

    def __init__(
        self,
        net: ValidatedNetwork,
        areas: Sequence[Area],
        rs_table: Mapping[str, ReliabilityScore],
        policy: RegretPolicy = RegretPolicy(),
        key_nodes: Sequence[str] | None = None,
    ):
        self.net = net
        self.areas: dict[str, Area] = {}
        for a in areas:
            self.areas[a.id] = a
        self.rs_table = dict(rs_table)
        self.policy = policy
        keys = tuple(key_nodes) if key_nodes else net.key_nodes
        if not keys:
            raise ValueError("engine requires at least one key node")
        for k in keys:
            net.node(k)
        self.key_nodes: tuple[str, ...] = keys

        self._lock = threading.Lock()
        self._states: dict[str, AreaState] = instantiate_areas(net, areas)
        self._seq: dict[str, int] = {a: 0 for a in self._states}
        self._timeline: list[BeliefSnapshot] = []
        self._halted = False
        self._last_time: datetime | None = None
        # Original priors: Eq.-style soft conversion divides by the node's
        # pristine marginal, never the current posterior.
        self._priors: dict[str, Distribution] = {
            n: net.query(n) for n in net.node_ids
        }

        for area_id in self._states:
            self._emit(area_id, time=None, trigger=None)

    # --- accessors -----------------------------------------------------------

    @property
    def halted(self) -> bool:
        return self._halted

    @property
    def timeline(self) -> list[BeliefSnapshot]:
        return list(self._timeline)

    def area_state(self, area_id: str) -> AreaState:
        if area_id not in self._states:
            raise UnknownArea(f"unknown area {area_id!r}")
        return self._states[area_id]

    def area_timeline(self, area_id: str) -> list[BeliefSnapshot]:
        self.area_state(area_id)
        return [s for s in self._timeline if s.area_id == area_id]

    def prior(self, node_id: str) -> Distribution:
        self.net.node(node_id)
        return self._priors[node_id]

    def current_beliefs(self, area_id: str) -> dict[str, Distribution]:
        """Marginals of every node under the area's accumulated evidence."""
        st = self.area_state(area_id)
        likelihoods = st.likelihoods()
        return {n: self.net.query(n, st.hard, likelihoods) for n in self.net.node_ids}

    # --- ingest ----------------------------------------------------------------

    def _emit(self, area_id: str, time: datetime | None, trigger: str | None) -> BeliefSnapshot:
        st = self._states[area_id]
        likelihoods = st.likelihoods()
        marginals = {
            n: self.net.query(n, st.hard, likelihoods) for n in self.key_nodes
        }
        snap = BeliefSnapshot(
            seq=self._seq[area_id],
            time=time,
            area_id=area_id,
            marginals=marginals,
            trigger=trigger,
        )
        self._seq[area_id] += 1
        self._timeline.append(snap)
        return snap

    def _addressed(self, obs: Observation) -> list[str]:
        if obs.location == "all":
            return list(self._states.keys())
        seen: list[str] = []
        for area_id in obs.location:
            if area_id not in self._states:
                raise UnknownArea(f"observation {obs.id!r}: unknown area {area_id!r}")
            if area_id not in seen:
                seen.append(area_id)
        return seen

    def _apply(self, st: AreaState, evidence) -> AreaState:
        new = st.clone()
        if isinstance(evidence, Hard):
            recorded = new.hard.get(evidence.node_id)
            if recorded is not None and recorded != evidence.state:
                raise HardEvidenceConflict(
                    f"area {st.area_id!r}, node {evidence.node_id!r}: recorded hard "
                    f"state {recorded!r} contradicts new {evidence.state!r} "
                    f"(observation {evidence.origin!r})"
                )
            new.hard[evidence.node_id] = evidence.state
            new.confirmed.add(evidence.node_id)
        elif isinstance(evidence, Virtual):
            new.virtuals.append((evidence.node_id, evidence.likelihood, evidence.origin))
        elif isinstance(evidence, Soft):
            vec = soft_to_virtual(evidence.ratio, self._priors[evidence.node_id])
            previous = new.soft_overrides.get(evidence.node_id)
            if previous is not None:
                logger.info(
                    "area %r: soft evidence on %r from observation %r replaces %r",
                    st.area_id, evidence.node_id, evidence.origin, previous[2],
                )
            new.soft_overrides[evidence.node_id] = (evidence.ratio, vec, evidence.origin)
        else:  # pragma: no cover - classify returns only the three kinds
            raise TypeError(f"unsupported evidence {evidence!r}")
        return new

    def ingest(self, obs: Observation) -> list[BeliefSnapshot]:
        """Apply one observation to every addressed area.

        All-or-nothing: a failure in any addressed area (hard-evidence
        conflict, zero-probability evidence, ...) rejects the whole
        observation and leaves the engine untouched.
        """
        with self._lock:
            if self._halted:
                raise EngineHalted(
                    f"all key variables confirmed; observation {obs.id!r} rejected"
                )
            area_ids = self._addressed(obs)
            evidence = classify(obs, self.rs_table, self.net, self.policy)

            if self._last_time is not None and obs.time < self._last_time:
                logger.warning(
                    "observation %r at %s arrives before already-processed %s",
                    obs.id, format_time(obs.time), format_time(self._last_time),
                )

            staged: dict[str, AreaState] = {}
            for area_id in area_ids:
                new_state = self._apply(self._states[area_id], evidence)
                # Probe the recompute before committing anything.
                likelihoods = new_state.likelihoods()
                for k in self.key_nodes:
                    self.net.query(k, new_state.hard, likelihoods)
                staged[area_id] = new_state

            snapshots = []
            for area_id in area_ids:
                self._states[area_id] = staged[area_id]
                snapshots.append(self._emit(area_id, time=obs.time, trigger=obs.id))

            self._last_time = obs.time if self._last_time is None else max(
                self._last_time, obs.time
            )
            self._halted = all(
                set(self.key_nodes) <= st.confirmed for st in self._states.values()
            )
            return snapshots

    def replay(
        self,
        observations: Iterable[Observation],
        on_time_group: Callable[[datetime, list[BeliefSnapshot]], None] | None = None,
    ) -> ReplayResult:
        """Fold ingest over observations sorted by (time, id).

        Per-observation errors are recorded and skipped. ``on_time_group``
        fires after the last observation of each distinct timestamp, with
        the snapshots emitted for that group (panel rendering hook).
        """
        ordered = sorted(observations, key=lambda o: (o.time, o.id))
        errors: list[tuple[str, str, str]] = []
        group_time: datetime | None = None
        group_snaps: list[BeliefSnapshot] = []

        def flush() -> None:
            if group_time is not None and on_time_group is not None:
                on_time_group(group_time, list(group_snaps))

        for obs in ordered:
            if obs.time != group_time:
                flush()
                group_time = obs.time
                group_snaps = []
            try:
                group_snaps.extend(self.ingest(obs))
            except ErimapError as exc:
                logger.warning("observation %r rejected: %s", obs.id, exc)
                errors.append((obs.id, exc.code, str(exc)))
        flush()
        return ReplayResult(snapshots=self.timeline, errors=errors)


def timeline_to_csv(timeline: Sequence[BeliefSnapshot], net: ValidatedNetwork) -> str:
    """RFC 4180 CSV of a timeline: one row per snapshot, key node, and state."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(
        ["seq", "time", "area_id", "node_id", "state", "probability", "trigger_observation_id"]
    )
    for snap in timeline:
        time_text = format_time(snap.time) if snap.time else ""
        trigger = snap.trigger or ""
        for node_id, dist in snap.marginals.items():
            for state, prob in zip(net.states(node_id), dist.probs):
                writer.writerow(
                    [snap.seq, time_text, snap.area_id, node_id, state, repr(prob), trigger]
                )
    return buf.getvalue()


def timeline_to_series(timeline: Sequence[BeliefSnapshot], net: ValidatedNetwork) -> dict:
    """Per-area time series of key-node marginals (chart-ready)."""
    areas: dict[str, list[dict]] = {}
    for snap in timeline:
        areas.setdefault(snap.area_id, []).append(snap.to_json_dict(net))
    return {"areas": areas}
