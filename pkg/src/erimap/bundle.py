"""Scenario bundle loading: the preparation-phase artifacts as one directory.

A bundle directory contains ``bundle.json`` naming the network spec, areas
file, threat-zones file, substance constants, the reliability table with
its precautionary boost, the key-node list, and any observation scripts:

    {
      "network": "network.json",
      "areas": "areas.geojson",
      "threat_zones": "threat_zones.geojson",
      "substances": "substances.json",
      "reliability": {"RS1": 0.7, "RS2": 0.8, "RS3": 1.0},
      "theta": 0.1,
      "key_nodes": ["People in Building Affected"],
      "layers": {"building_type": "Building Type"},
      "scripts": {"scenario1": "scenario1.jsonl"}
    }

Loading parses every referenced file and cross-validates them: layer
attribute values must be states of their linked nodes, script observations
must reference declared areas and nodes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .bn import CptTable, NetworkSpec, NodeSpec, ValidatedNetwork, build_network
from .errors import CrossValidationError, ErimapError, ParseError
from .evidence import RegretPolicy, ReliabilityScore
from .hazard import ProbitParams
from .observations import Observation, parse_observation
from .pipeline import Engine
from .spatial import Area, ThreatZone


@dataclass
class ScenarioBundle:
    root: Path
    spec: NetworkSpec
    net: ValidatedNetwork
    areas: list[Area]
    zones: list[ThreatZone]
    substances: dict[str, ProbitParams]
    rs_table: dict[str, ReliabilityScore]
    policy: RegretPolicy
    key_nodes: list[str]
    layers: dict[str, str] = field(default_factory=dict)  # layer name -> node id
    scripts: dict[str, Path] = field(default_factory=dict)

    @property
    def map_target(self) -> tuple[str, str]:
        """Default choropleth target: first key node, first critical state."""
        node = self.key_nodes[0]
        spec = self.net.node(node)
        state = spec.critical_states[0] if spec.critical_states else spec.states[0]
        return node, state


def _read_json(path: Path) -> dict | list:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from None


def _require(doc: dict, name: str, where: str):
    if name not in doc:
        raise ParseError(f"{where}: missing field {name!r}")
    return doc[name]


def load_network_file(path: Path) -> NetworkSpec:
    doc = _read_json(path)
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: network spec must be a JSON object")
    nodes = []
    for raw in _require(doc, "nodes", str(path)):
        table_raw = _require(raw, "table", f"{path} node {raw.get('id')!r}")
        rows: dict[tuple[str, ...], list[float]] = {}
        for row in _require(table_raw, "rows", f"{path} node {raw.get('id')!r}"):
            rows[tuple(row.get("given", []))] = [float(p) for p in row["probs"]]
        nodes.append(
            NodeSpec(
                id=str(_require(raw, "id", str(path))),
                states=[str(s) for s in _require(raw, "states", f"{path} node {raw.get('id')!r}")],
                table=CptTable(
                    parents=[str(p) for p in table_raw.get("parents", [])],
                    rows=rows,
                ),
                critical_states=[str(s) for s in raw.get("critical_states", [])],
            )
        )
    edges = [(str(a), str(b)) for a, b in doc.get("edges", [])]
    key_nodes = [str(k) for k in doc.get("key_nodes", [])]
    return NetworkSpec(nodes=nodes, edges=edges, key_nodes=key_nodes)


def load_areas_file(path: Path) -> list[Area]:
    doc = _read_json(path)
    if not isinstance(doc, dict) or doc.get("type") != "FeatureCollection":
        raise ParseError(f"{path}: expected a GeoJSON FeatureCollection")
    areas = []
    for feature in doc.get("features", []):
        if "id" not in feature:
            raise ParseError(f"{path}: area feature missing 'id'")
        geom = feature.get("geometry") or {}
        if geom.get("type") != "Polygon":
            raise ParseError(f"{path}: area {feature['id']!r} geometry must be a Polygon")
        ring = geom["coordinates"][0]
        props = feature.get("properties") or {}
        areas.append(
            Area(
                id=str(feature["id"]),
                footprint=[(float(x), float(y)) for x, y in ring],
                attributes={str(k): str(v) for k, v in props.items()},
            )
        )
    return areas


def load_zones_file(path: Path) -> list[ThreatZone]:
    doc = _read_json(path)
    if not isinstance(doc, dict) or doc.get("type") != "FeatureCollection":
        raise ParseError(f"{path}: expected a GeoJSON FeatureCollection")
    zones = []
    for feature in doc.get("features", []):
        props = feature.get("properties") or {}
        if "concentration_ppm" not in props:
            raise ParseError(f"{path}: threat zone missing properties.concentration_ppm")
        geom = feature.get("geometry") or {}
        if geom.get("type") != "Polygon":
            raise ParseError(f"{path}: threat zone geometry must be a Polygon")
        zones.append(
            ThreatZone(
                polygon=tuple((float(x), float(y)) for x, y in geom["coordinates"][0]),
                concentration_ppm=float(props["concentration_ppm"]),
            )
        )
    return zones


def load_script(path: Path) -> list[Observation]:
    observations = []
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: {exc}") from None
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            observations.append(parse_observation(json.loads(line)))
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}:{lineno}: invalid JSON ({exc})") from None
        except ParseError as exc:
            raise ParseError(f"{path}:{lineno}: {exc}") from None
    return observations


def load_bundle(path: str | Path) -> tuple[ScenarioBundle, Engine]:
    """Load and cross-validate a bundle directory; return it with a ready engine."""
    root = Path(path)
    manifest_path = root / "bundle.json"
    manifest = _read_json(manifest_path)
    if not isinstance(manifest, dict):
        raise ParseError(f"{manifest_path}: bundle manifest must be a JSON object")

    where = str(manifest_path)
    spec = load_network_file(root / str(_require(manifest, "network", where)))
    try:
        net = build_network(spec)
    except ErimapError as exc:
        raise CrossValidationError(f"{root}: network spec invalid: {exc}") from None
    areas = load_areas_file(root / str(_require(manifest, "areas", where)))
    zones = load_zones_file(root / str(_require(manifest, "threat_zones", where)))

    substances = {}
    substances_doc = _read_json(root / str(_require(manifest, "substances", where)))
    for name, params in substances_doc.items():
        substances[name] = ProbitParams(
            a=float(_require(params, "a", f"substance {name!r}")),
            b=float(_require(params, "b", f"substance {name!r}")),
            n=float(_require(params, "n", f"substance {name!r}")),
            substance=name,
        )

    reliability_raw = _require(manifest, "reliability", where)
    rs_table = {
        tier: ReliabilityScore(tier=tier, likelihood=float(value))
        for tier, value in reliability_raw.items()
    }
    policy = RegretPolicy(theta=float(manifest.get("theta", 0.0)))

    key_nodes = [str(k) for k in manifest.get("key_nodes", [])] or list(spec.key_nodes)
    if not key_nodes:
        raise ParseError(f"{where}: missing field 'key_nodes'")
    for k in key_nodes:
        if k not in {n.id for n in spec.nodes}:
            raise CrossValidationError(f"{where}: key node {k!r} is not a network node")

    layers = {str(k): str(v) for k, v in manifest.get("layers", {}).items()}
    node_ids = {n.id for n in spec.nodes}
    area_ids = {a.id for a in areas}
    for layer, node_id in layers.items():
        if node_id not in node_ids:
            raise CrossValidationError(
                f"{where}: layer {layer!r} linked to unknown node {node_id!r}"
            )
        states = set(net.states(node_id))
        for area in areas:
            value = area.attributes.get(layer)
            if value is not None and value not in states:
                raise CrossValidationError(
                    f"{root / str(manifest['areas'])}: area {area.id!r} attribute "
                    f"{layer!r} value {value!r} is not a state of node {node_id!r}"
                )

    scripts: dict[str, Path] = {}
    for name, rel in manifest.get("scripts", {}).items():
        script_path = root / str(rel)
        observations = load_script(script_path)
        for obs in observations:
            if obs.node_id not in node_ids:
                raise CrossValidationError(
                    f"{script_path}: observation {obs.id!r} references unknown node "
                    f"{obs.node_id!r}"
                )
            if obs.location != "all":
                for area_id in obs.location:
                    if area_id not in area_ids:
                        raise CrossValidationError(
                            f"{script_path}: observation {obs.id!r} references unknown "
                            f"area {area_id!r}"
                        )
        scripts[str(name)] = script_path

    bundle = ScenarioBundle(
        root=root,
        spec=spec,
        net=net,
        areas=areas,
        zones=zones,
        substances=substances,
        rs_table=rs_table,
        policy=policy,
        key_nodes=key_nodes,
        layers=layers,
        scripts=scripts,
    )
    engine = Engine(net, areas, rs_table, policy, key_nodes=key_nodes)
    return bundle, engine
