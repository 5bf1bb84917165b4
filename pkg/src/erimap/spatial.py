"""Areas, per-area belief state, GIS layer linkage, and threat-zone overlap.

Each assessed area (a building, in the shipped site) holds its own evidence
against a shared immutable network: the duplicate-network-per-area design
reduces to keeping evidence per area, since structure and tables never
change during operation. Geometry is site-local planar metres; overlap
means positive intersection area, not boundary contact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime
from typing import Iterable, Mapping, Sequence

from shapely.geometry import Polygon
from shapely.validation import explain_validity

from .bn import NodeSpec, ValidatedNetwork
from .errors import (
    DuplicateAreaId,
    InvalidGeometry,
    InvalidState,
    MissingAttribute,
    UnmappedAttributeValue,
)
from .observations import Observation, UnambiguousState

AREA_EPS = 1e-9


@dataclass
class Area:
    """One individually assessed area: footprint polygon plus GIS attributes."""

    id: str
    footprint: list[tuple[float, float]]
    attributes: dict[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class ThreatZone:
    polygon: tuple[tuple[float, float], ...]
    concentration_ppm: float

    def __post_init__(self) -> None:
        if self.concentration_ppm <= 0:
            raise ValueError("threat zone concentration must be positive")


@dataclass
class AreaState:
    """Evidence accumulated for one area against the shared network.

    ``virtuals`` appends in arrival order; ``soft_overrides`` keeps the
    latest probability-ratio finding per node (converted against the node's
    original prior); ``hard`` states are confirmed and immutable.
    """

    area_id: str
    hard: dict[str, str] = field(default_factory=dict)
    virtuals: list[tuple[str, tuple[float, ...], str]] = field(default_factory=list)
    soft_overrides: dict[str, tuple[tuple[float, ...], tuple[float, ...], str]] = field(
        default_factory=dict
    )
    confirmed: set[str] = field(default_factory=set)

    def likelihoods(self) -> list[tuple[str, tuple[float, ...]]]:
        """All active likelihood vectors: virtuals plus soft-derived ones."""
        out = [(node, vec) for node, vec, _ in self.virtuals]
        out += [(node, vec) for node, (_, vec, _) in sorted(self.soft_overrides.items())]
        return out

    def clone(self) -> "AreaState":
        return AreaState(
            area_id=self.area_id,
            hard=dict(self.hard),
            virtuals=list(self.virtuals),
            soft_overrides=dict(self.soft_overrides),
            confirmed=set(self.confirmed),
        )


def as_polygon(coords: Sequence[tuple[float, float]], what: str) -> Polygon:
    if len(coords) < 3:
        raise InvalidGeometry(f"{what}: polygon needs at least 3 vertices, got {len(coords)}")
    poly = Polygon(coords)
    if not poly.is_valid or poly.area <= 0:
        raise InvalidGeometry(f"{what}: {explain_validity(poly)}")
    return poly


def instantiate_areas(net: ValidatedNetwork, areas: Iterable[Area]) -> dict[str, AreaState]:
    """One empty evidence state per area, all sharing ``net``."""
    states: dict[str, AreaState] = {}
    for area in areas:
        if area.id in states:
            raise DuplicateAreaId(f"duplicate area id {area.id!r}")
        as_polygon(area.footprint, f"area {area.id!r}")
        states[area.id] = AreaState(area_id=area.id)
    return states


def layer_to_evidence(
    area: Area,
    layer: str,
    node: NodeSpec,
    time: datetime,
    obs_id: str | None = None,
) -> Observation:
    """Synthesize the RS3 unambiguous observation a GIS layer provides."""
    if layer not in area.attributes:
        raise MissingAttribute(f"area {area.id!r} has no attribute {layer!r}")
    value = area.attributes[layer]
    if value not in node.states:
        raise UnmappedAttributeValue(
            f"area {area.id!r}: attribute {layer!r} value {value!r} "
            f"is not a state of node {node.id!r}"
        )
    return Observation(
        id=obs_id or f"layer-{layer}-{area.id}",
        time=time,
        location=(area.id,),
        node_id=node.id,
        tier="RS3",
        payload=UnambiguousState(value),
        source=f"GIS layer {layer}",
    )


def max_zone_overlap(area: Area, zones: Iterable[ThreatZone]) -> float | None:
    """Highest concentration among zones overlapping the footprint.

    Overlap requires positive intersection area (> 1e-9 m^2); a footprint
    grazing a zone boundary at a point or edge is not inside it.
    """
    footprint = as_polygon(area.footprint, f"area {area.id!r}")
    best: float | None = None
    for zone in zones:
        poly = as_polygon(zone.polygon, f"zone {zone.concentration_ppm}ppm")
        if footprint.intersection(poly).area > AREA_EPS:
            if best is None or zone.concentration_ppm > best:
                best = zone.concentration_ppm
    return best


def _closed_ring(coords: Sequence[tuple[float, float]]) -> list[list[float]]:
    ring = [[float(x), float(y)] for x, y in coords]
    if ring[0] != ring[-1]:
        ring.append(ring[0])
    return ring


def beliefs_to_geojson(
    areas: Sequence[Area],
    states: Mapping[str, AreaState],
    net: ValidatedNetwork,
    target: str,
    target_state: str,
) -> dict:
    """Choropleth FeatureCollection: posterior of ``target_state`` per area."""
    node_states = net.states(target)  # raises UnknownNode
    if target_state not in node_states:
        raise InvalidState(f"node {target!r} has no state {target_state!r}")
    idx = node_states.index(target_state)

    features = []
    for area in areas:
        st = states[area.id]
        dist = net.query(target, st.hard, st.likelihoods())
        features.append(
            {
                "type": "Feature",
                "id": area.id,
                "geometry": {
                    "type": "Polygon",
                    "coordinates": [_closed_ring(area.footprint)],
                },
                "properties": {
                    "area_id": area.id,
                    "probability": dist.probs[idx],
                    "confirmed": target in st.confirmed,
                },
            }
        )
    return {"type": "FeatureCollection", "features": features}
