"""Area instantiation, GIS linkage, zone overlap, and choropleth tests."""

from datetime import datetime, timezone

import pytest

from erimap.bn import CptTable, NetworkSpec, NodeSpec, build_network
from erimap.bundle import load_script
from erimap.errors import (
    DuplicateAreaId,
    InvalidGeometry,
    InvalidState,
    MissingAttribute,
    UnknownNode,
    UnmappedAttributeValue,
)
from erimap.observations import UnambiguousState
from erimap.spatial import (
    Area,
    ThreatZone,
    beliefs_to_geojson,
    instantiate_areas,
    layer_to_evidence,
    max_zone_overlap,
)

T0 = datetime(2024, 3, 2, tzinfo=timezone.utc)


def square(x0, y0, size=40.0):
    return [(x0, y0), (x0 + size, y0), (x0 + size, y0 + size), (x0, y0 + size)]


def tiny_net():
    return build_network(
        NetworkSpec(
            nodes=[
                NodeSpec(
                    "Building Type",
                    ["Office", "Production", "Mixed"],
                    CptTable([], {(): [0.4, 0.3, 0.3]}),
                )
            ]
        )
    )


class TestInstantiateAreas:
    def test_twenty_seven_empty_states(self, henkel_bundle):
        states = instantiate_areas(henkel_bundle.net, henkel_bundle.areas)
        assert len(states) == 27
        assert all(
            not s.hard and not s.virtuals and not s.soft_overrides and not s.confirmed
            for s in states.values()
        )

    def test_empty_input(self):
        assert instantiate_areas(tiny_net(), []) == {}

    def test_duplicate_id(self):
        areas = [
            Area("17", square(0, 0)),
            Area("17", square(100, 0)),
        ]
        with pytest.raises(DuplicateAreaId):
            instantiate_areas(tiny_net(), areas)


class TestLayerToEvidence:
    def test_building_type_layer(self):
        area = Area("17", square(0, 0), {"building_type": "Production"})
        obs = layer_to_evidence(area, "building_type", tiny_net().node("Building Type"), T0)
        assert obs.tier == "RS3"
        assert obs.location == ("17",)
        assert obs.payload == UnambiguousState("Production")

    def test_unmapped_value(self):
        area = Area("5", square(0, 0), {"building_type": "Warehouse"})
        with pytest.raises(UnmappedAttributeValue):
            layer_to_evidence(area, "building_type", tiny_net().node("Building Type"), T0)

    def test_missing_attribute(self):
        area = Area("5", square(0, 0), {})
        with pytest.raises(MissingAttribute):
            layer_to_evidence(area, "building_type", tiny_net().node("Building Type"), T0)


class TestMaxZoneOverlap:
    ZONES = [
        ThreatZone(((-120, 560), (120, 560), (120, 1000), (-120, 1000)), 600),
        ThreatZone(((-200, 330), (200, 330), (200, 1000), (-200, 1000)), 400),
        ThreatZone(((-280, 80), (280, 80), (280, 1000), (-280, 1000)), 200),
    ]

    def test_all_three_zones_takes_highest(self):
        area = Area("17", square(-100, 820))
        assert max_zone_overlap(area, self.ZONES) == 600

    def test_outside_all_zones(self):
        area = Area("1", square(400, 100))
        assert max_zone_overlap(area, self.ZONES) is None

    def test_outer_zone_only(self):
        area = Area("15", square(-230, 180))
        assert max_zone_overlap(area, self.ZONES) == 200

    def test_boundary_touch_is_not_overlap(self):
        area = Area("x", square(280, 80))  # west edge on the 200 ppm boundary
        assert max_zone_overlap(area, self.ZONES) is None

    def test_monotone_in_zone_list(self):
        area = Area("17", square(-100, 820))
        seen = None
        for k in range(len(self.ZONES) + 1):
            got = max_zone_overlap(area, self.ZONES[:k])
            assert (got or 0) >= (seen or 0)
            seen = got

    def test_self_intersecting_polygon(self):
        bowtie = Area("b", [(0, 0), (10, 10), (10, 0), (0, 10)])
        with pytest.raises(InvalidGeometry):
            max_zone_overlap(bowtie, self.ZONES)

    def test_fixture_memberships_match_scenario_groups(self, henkel_bundle):
        script = load_script(henkel_bundle.scripts["scenario1"])
        groups = {
            tuple(sorted(obs.location, key=int)): obs.payload.ratio[0]
            for obs in script
            if obs.node_id == "Critical Gas Dose around Building"
        }
        ppm_for_ratio = {0.8: 600, 0.6: 400, 0.3: 200}
        zoned: set[str] = set()
        for buildings, ratio in groups.items():
            zoned.update(buildings)
            for bid in buildings:
                area = next(a for a in henkel_bundle.areas if a.id == bid)
                assert max_zone_overlap(area, henkel_bundle.zones) == ppm_for_ratio[ratio]
        for area in henkel_bundle.areas:
            if area.id not in zoned:
                assert max_zone_overlap(area, henkel_bundle.zones) is None


class TestBeliefsToGeojson:
    def test_identical_priors_before_evidence(self, henkel_bundle):
        states = instantiate_areas(henkel_bundle.net, henkel_bundle.areas)
        doc = beliefs_to_geojson(
            henkel_bundle.areas, states, henkel_bundle.net,
            "People in Building Affected", "True",
        )
        assert doc["type"] == "FeatureCollection"
        assert len(doc["features"]) == 27
        probs = {f["properties"]["probability"] for f in doc["features"]}
        assert len(probs) == 1
        assert all(not f["properties"]["confirmed"] for f in doc["features"])

    def test_hard_evidence_confirms_and_pins(self, henkel_bundle):
        states = instantiate_areas(henkel_bundle.net, henkel_bundle.areas)
        states["17"].hard["People in Building Affected"] = "True"
        states["17"].confirmed.add("People in Building Affected")
        doc = beliefs_to_geojson(
            henkel_bundle.areas, states, henkel_bundle.net,
            "People in Building Affected", "True",
        )
        by_id = {f["properties"]["area_id"]: f["properties"] for f in doc["features"]}
        assert by_id["17"]["probability"] == 1.0
        assert by_id["17"]["confirmed"] is True
        assert by_id["16"]["confirmed"] is False

    def test_probabilities_in_unit_interval(self, henkel_engine):
        doc = beliefs_to_geojson(
            list(henkel_engine.areas.values()),
            {a: henkel_engine.area_state(a) for a in henkel_engine.areas},
            henkel_engine.net,
            "People in Building",
            "True",
        )
        assert len(doc["features"]) == len(henkel_engine.areas)
        assert all(0.0 <= f["properties"]["probability"] <= 1.0 for f in doc["features"])

    def test_unknown_target_rejected(self, henkel_bundle):
        states = instantiate_areas(henkel_bundle.net, henkel_bundle.areas)
        with pytest.raises(UnknownNode):
            beliefs_to_geojson(henkel_bundle.areas, states, henkel_bundle.net, "Nope", "True")
        with pytest.raises(InvalidState):
            beliefs_to_geojson(
                henkel_bundle.areas, states, henkel_bundle.net,
                "People in Building", "Perhaps",
            )
