"""Observation records: the five-field finding schema plus parsing.

An observation carries when it was made, where (one or more area ids, or
``"all"``), which node it informs, the reliability tier of its source, and
the observed state payload. The payload is exactly one of: an unambiguous
state name, a probability ratio over the node's states, or a likelihood
ratio over the node's states.

Wire format is one JSON object per observation (newline-delimited in
script files), timestamps ISO-8601 UTC at second precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Union

from .errors import ParseError

TIERS = ("RS1", "RS2", "RS3")


@dataclass(frozen=True)
class UnambiguousState:
    state: str


@dataclass(frozen=True)
class ProbRatio:
    ratio: tuple[float, ...]


@dataclass(frozen=True)
class LikelihoodRatio:
    likelihood: tuple[float, ...]


Payload = Union[UnambiguousState, ProbRatio, LikelihoodRatio]


@dataclass(frozen=True)
class Observation:
    id: str
    time: datetime
    location: tuple[str, ...] | str  # tuple of area ids, or the literal "all"
    node_id: str
    tier: str
    payload: Payload
    source: str = ""

    def __post_init__(self) -> None:
        if not self.id:
            raise ParseError("observation missing field 'id'")
        if self.time.tzinfo is None:
            raise ParseError(f"observation {self.id!r}: time must be timezone-aware")
        if isinstance(self.location, str):
            if self.location != "all":
                raise ParseError(
                    f"observation {self.id!r}: location string must be 'all'"
                )
        elif len(self.location) == 0:
            raise ParseError(f"observation {self.id!r}: location must be non-empty")
        if self.tier not in TIERS:
            raise ParseError(
                f"observation {self.id!r}: tier must be one of {TIERS}, got {self.tier!r}"
            )

    def to_json_dict(self) -> dict:
        if isinstance(self.payload, UnambiguousState):
            payload = {"state": self.payload.state}
        elif isinstance(self.payload, ProbRatio):
            payload = {"prob_ratio": list(self.payload.ratio)}
        else:
            payload = {"likelihood_ratio": list(self.payload.likelihood)}
        return {
            "id": self.id,
            "time": format_time(self.time),
            "location": self.location if isinstance(self.location, str) else list(self.location),
            "node": self.node_id,
            "tier": self.tier,
            "payload": payload,
            "source": self.source,
        }


def parse_time(raw: str) -> datetime:
    """ISO-8601 -> aware UTC datetime, truncated to whole seconds."""
    try:
        t = datetime.fromisoformat(raw.replace("Z", "+00:00"))
    except ValueError as exc:
        raise ParseError(f"bad timestamp {raw!r}: {exc}") from None
    if t.tzinfo is None:
        t = t.replace(tzinfo=timezone.utc)
    return t.astimezone(timezone.utc).replace(microsecond=0)


def format_time(t: datetime) -> str:
    return t.astimezone(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _vector(raw, obs_id: str, field: str) -> tuple[float, ...]:
    if not isinstance(raw, (list, tuple)) or not raw:
        raise ParseError(f"observation {obs_id!r}: payload.{field} must be a non-empty list")
    try:
        return tuple(float(x) for x in raw)
    except (TypeError, ValueError):
        raise ParseError(f"observation {obs_id!r}: payload.{field} must be numeric") from None


def parse_observation(record: dict, default_id: str | None = None) -> Observation:
    """Parse one wire-format observation dict.

    ``default_id`` fills a missing ``id`` (the service assigns one to form
    submissions); script files are expected to carry explicit ids.
    """
    if not isinstance(record, dict):
        raise ParseError("observation record must be a JSON object")
    obs_id = record.get("id") or default_id
    if not obs_id:
        raise ParseError("observation missing field 'id'")
    for name in ("time", "location", "node", "tier", "payload"):
        if name not in record:
            raise ParseError(f"observation {obs_id!r} missing field {name!r}")

    location = record["location"]
    if isinstance(location, list):
        location = tuple(str(a) for a in location)
    elif not isinstance(location, str):
        raise ParseError(f"observation {obs_id!r}: location must be a list or 'all'")

    payload_raw = record["payload"]
    if not isinstance(payload_raw, dict):
        raise ParseError(f"observation {obs_id!r}: payload must be an object")
    variants = [k for k in ("state", "prob_ratio", "likelihood_ratio") if k in payload_raw]
    if len(variants) != 1:
        raise ParseError(
            f"observation {obs_id!r}: payload must contain exactly one of "
            "'state', 'prob_ratio', 'likelihood_ratio'"
        )
    kind = variants[0]
    payload: Payload
    if kind == "state":
        payload = UnambiguousState(str(payload_raw["state"]))
    elif kind == "prob_ratio":
        payload = ProbRatio(_vector(payload_raw["prob_ratio"], obs_id, "prob_ratio"))
    else:
        payload = LikelihoodRatio(
            _vector(payload_raw["likelihood_ratio"], obs_id, "likelihood_ratio")
        )

    return Observation(
        id=str(obs_id),
        time=parse_time(str(record["time"])),
        location=location,
        node_id=str(record["node"]),
        tier=str(record["tier"]),
        payload=payload,
        source=str(record.get("source", "")),
    )
