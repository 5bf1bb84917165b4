#!/usr/bin/env python3
"""Generate the henkel chemical-plant scenario bundle under scenarios/henkel/.

Produces the six-node network with the calibrated default tables, the
synthetic 27-building site, the three nested plume threat zones, and the
three observation scripts (single-building walkthrough plus the two
site-wide scenarios). Zone memberships of the generated footprints are
asserted against the scenario groupings before writing anything.

Run from the repository root:  python3 scripts/make_henkel_bundle.py
"""

import json
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "scenarios" / "henkel"

TOD = "Time of Day"
BT = "Building Type"
PEOPLE = "People in Building"
GAS_AROUND = "Critical Gas Dose around Building"
GAS_IN = "Critical Gas Dose in Building"
AFFECTED = "People in Building Affected"

DAY, NIGHT = "6am-6pm", "6pm-6am"

OFFICE_BUILDINGS = ["2", "3", "5", "7", "8", "11", "12", "18", "25", "26", "27"]
PRODUCTION_BUILDINGS = ["4", "6", "10", "13", "16", "17", "21", "23"]
MIXED_BUILDINGS = ["1", "9", "14", "15", "19", "20", "22", "24"]

ZONE_600 = ["6", "7", "8", "9", "10", "11", "13", "14", "16", "17", "26"]
ZONE_400 = ["4", "12", "19", "21", "24"]
ZONE_200 = ["15", "20", "22", "23", "25"]
ZONE_NONE = ["1", "2", "3", "5", "18", "27"]

BUILDING_SIZE = 40.0


def network_doc() -> dict:
    def rows(*entries):
        return [{"given": list(given), "probs": list(probs)} for given, probs in entries]

    return {
        "nodes": [
            {
                "id": TOD,
                "states": [DAY, NIGHT],
                "critical_states": [],
                "table": {"parents": [], "rows": rows(((), (0.5, 0.5)))},
            },
            {
                "id": BT,
                "states": ["Office", "Production", "Mixed"],
                "critical_states": [],
                "table": {"parents": [], "rows": rows(((), (0.4, 0.3, 0.3)))},
            },
            {
                "id": PEOPLE,
                "states": ["True", "False"],
                "critical_states": ["True"],
                "table": {
                    "parents": [TOD, BT],
                    "rows": rows(
                        ((DAY, "Office"), (0.99, 0.01)),
                        ((DAY, "Production"), (0.9, 0.1)),
                        ((DAY, "Mixed"), (0.95, 0.05)),
                        ((NIGHT, "Office"), (0.2, 0.8)),
                        ((NIGHT, "Production"), (0.8, 0.2)),
                        ((NIGHT, "Mixed"), (0.5, 0.5)),
                    ),
                },
            },
            {
                "id": GAS_AROUND,
                "states": ["True", "False"],
                "critical_states": ["True"],
                "table": {"parents": [], "rows": rows(((), (0.01, 0.99)))},
            },
            {
                "id": GAS_IN,
                "states": ["True", "False"],
                "critical_states": ["True"],
                "table": {
                    "parents": [GAS_AROUND],
                    "rows": rows(
                        (("True",), (0.75, 0.25)),
                        (("False",), (0.05, 0.95)),
                    ),
                },
            },
            {
                "id": AFFECTED,
                "states": ["True", "False"],
                "critical_states": ["True"],
                "table": {
                    "parents": [PEOPLE, GAS_IN],
                    "rows": rows(
                        (("True", "True"), (0.95, 0.05)),
                        (("True", "False"), (0.1, 0.9)),
                        (("False", "True"), (0.05, 0.95)),
                        (("False", "False"), (0.01, 0.99)),
                    ),
                },
            },
        ],
        "edges": [
            [TOD, PEOPLE],
            [BT, PEOPLE],
            [GAS_AROUND, GAS_IN],
            [PEOPLE, AFFECTED],
            [GAS_IN, AFFECTED],
        ],
        "key_nodes": [AFFECTED],
    }


def square(x0: float, y0: float) -> list[list[float]]:
    s = BUILDING_SIZE
    return [[x0, y0], [x0 + s, y0], [x0 + s, y0 + s], [x0, y0 + s], [x0, y0]]


def building_positions() -> dict[str, tuple[float, float]]:
    pos: dict[str, tuple[float, float]] = {}
    # Inner plume band: 3 x 4 grid inside the 600 ppm rectangle.
    slots_600 = [(x, y) for y in (580.0, 660.0, 740.0, 820.0) for x in (-100.0, -20.0, 60.0)]
    for bid, xy in zip(ZONE_600, slots_600):
        pos[bid] = xy
    # Middle band: inside 400 ppm, south of the 600 ppm rectangle.
    for bid, x in zip(ZONE_400, (-190.0, -110.0, -30.0, 50.0, 130.0)):
        pos[bid] = (x, 400.0)
    # Outer band: inside 200 ppm, south of the 400 ppm rectangle.
    for bid, x in zip(ZONE_200, (-230.0, -150.0, -70.0, 10.0, 90.0)):
        pos[bid] = (x, 180.0)
    # East column, clear of every zone.
    for bid, y in zip(ZONE_NONE, (100.0, 250.0, 400.0, 550.0, 700.0, 850.0)):
        pos[bid] = (400.0, y)
    return pos


def areas_doc() -> dict:
    types = {b: "Office" for b in OFFICE_BUILDINGS}
    types.update({b: "Production" for b in PRODUCTION_BUILDINGS})
    types.update({b: "Mixed" for b in MIXED_BUILDINGS})
    pos = building_positions()
    features = []
    for n in range(1, 28):
        bid = str(n)
        x0, y0 = pos[bid]
        features.append(
            {
                "type": "Feature",
                "id": bid,
                "geometry": {"type": "Polygon", "coordinates": [square(x0, y0)]},
                "properties": {"building_type": types[bid]},
            }
        )
    return {"type": "FeatureCollection", "features": features}


def zones_doc() -> dict:
    def rect(x0, y0, x1, y1):
        return [[x0, y0], [x1, y0], [x1, y1], [x0, y1], [x0, y0]]

    zones = [
        (600, rect(-120, 560, 120, 1000)),
        (400, rect(-200, 330, 200, 1000)),
        (200, rect(-280, 80, 280, 1000)),
    ]
    return {
        "type": "FeatureCollection",
        "features": [
            {
                "type": "Feature",
                "geometry": {"type": "Polygon", "coordinates": [ring]},
                "properties": {"concentration_ppm": ppm},
            }
            for ppm, ring in zones
        ],
    }


def obs(i, prefix, time, location, node, payload, source, tier):
    return {
        "id": f"{prefix}-{i:02d}",
        "time": time,
        "location": location,
        "node": node,
        "tier": tier,
        "payload": payload,
        "source": source,
    }


def building17_script() -> list[dict]:
    day = "2024-03-02T00:%02d:00Z"
    rows = [
        (day % 0, [TOD], {"state": DAY}, "Clock", "RS3"),
        (day % 0, [BT], {"state": "Production"}, "GIS layer building_type", "RS3"),
        (day % 5, [GAS_AROUND], {"prob_ratio": [0.8, 0.2]}, "Simulation", "RS3"),
        (day % 8, [PEOPLE], {"state": "False"}, "Civilian", "RS1"),
        (day % 12, [PEOPLE], {"state": "True"}, "Civilian", "RS1"),
        (day % 14, [GAS_IN], {"likelihood_ratio": [0.9, 0.1]}, "Gas Sensor", "RS3"),
        (day % 15, [GAS_IN], {"likelihood_ratio": [0.9, 0.1]}, "Gas Sensor", "RS3"),
    ]
    return [
        obs(i + 1, "b17", time, ["17"], node[0], payload, source, tier)
        for i, (time, node, payload, source, tier) in enumerate(rows)
    ]


def scenario_rows(prefix: str, times: list[str], tod_state: str, tail: list) -> list[dict]:
    rows = [
        (times[0], "all", TOD, {"state": tod_state}, "Clock", "RS3"),
        (times[0], OFFICE_BUILDINGS, BT, {"state": "Office"}, "GIS layer building_type", "RS3"),
        (times[0], PRODUCTION_BUILDINGS, BT, {"state": "Production"}, "GIS layer building_type", "RS3"),
        (times[0], MIXED_BUILDINGS, BT, {"state": "Mixed"}, "GIS layer building_type", "RS3"),
        (times[1], ZONE_200, GAS_AROUND, {"prob_ratio": [0.3, 0.7]}, "Simulation", "RS3"),
        (times[1], ZONE_400, GAS_AROUND, {"prob_ratio": [0.6, 0.4]}, "Simulation", "RS3"),
        (times[1], ZONE_600, GAS_AROUND, {"prob_ratio": [0.8, 0.2]}, "Simulation", "RS3"),
    ] + tail
    return [
        obs(i + 1, prefix, time, location, node, payload, source, tier)
        for i, (time, location, node, payload, source, tier) in enumerate(rows)
    ]


def scenario1_script() -> list[dict]:
    t = ["2024-03-02T00:%02d:00Z" % m for m in (0, 5, 10, 15)]
    tail = [
        (t[2], ["9", "13", "17", "21"], PEOPLE, {"state": "True"}, "Human", "RS2"),
        (t[2], ["4", "10", "16", "19"], PEOPLE, {"state": "False"}, "Human", "RS2"),
        (t[3], ["6", "8", "9", "17", "26"], GAS_IN, {"likelihood_ratio": [0.9, 0.1]}, "Gas Sensor", "RS3"),
    ]
    return scenario_rows("s1", t, NIGHT, tail)


def scenario2_script() -> list[dict]:
    t = ["2024-03-02T09:%02d:00Z" % m for m in (0, 5, 10, 15, 20, 25)]
    tail = [
        (t[2], ["4", "8", "11", "16", "21", "22", "23", "26"], PEOPLE, {"state": "False"}, "Human", "RS3"),
        (t[2], ["10", "14", "20", "24"], PEOPLE, {"state": "False"}, "Human", "RS2"),
        (t[3], ["6", "7", "14", "17"], GAS_IN, {"likelihood_ratio": [0.9, 0.1]}, "Gas Sensor", "RS3"),
        (t[3], ["1", "2", "3", "24", "25", "27", "10", "18"], PEOPLE, {"state": "False"}, "Human", "RS3"),
        (t[4], ["5", "6", "9", "15", "20"], PEOPLE, {"state": "False"}, "Human", "RS3"),
        (t[4], ["7", "17"], AFFECTED, {"state": "False"}, "Human", "RS1"),
        (t[5], ["17"], AFFECTED, {"state": "True"}, "Human", "RS2"),
        (t[5], ["7", "12", "14", "19"], PEOPLE, {"state": "False"}, "Human", "RS3"),
        (t[5], ["13"], PEOPLE, {"state": "False"}, "Human", "RS2"),
    ]
    return scenario_rows("s2", t, DAY, tail)


def bundle_doc() -> dict:
    return {
        "network": "network.json",
        "areas": "areas.geojson",
        "threat_zones": "threat_zones.geojson",
        "substances": "substances.json",
        "reliability": {"RS1": 0.7, "RS2": 0.8, "RS3": 1.0},
        "theta": 0.1,
        "key_nodes": [AFFECTED, PEOPLE, GAS_IN],
        "layers": {"building_type": BT},
        "scripts": {
            "building17": "building17.jsonl",
            "scenario1": "scenario1.jsonl",
            "scenario2": "scenario2.jsonl",
        },
    }


def check_zone_memberships() -> None:
    from erimap.spatial import Area, ThreatZone, max_zone_overlap

    zones = [
        ThreatZone(polygon=tuple(map(tuple, f["geometry"]["coordinates"][0])),
                   concentration_ppm=f["properties"]["concentration_ppm"])
        for f in zones_doc()["features"]
    ]
    expected = {b: 600 for b in ZONE_600}
    expected.update({b: 400 for b in ZONE_400})
    expected.update({b: 200 for b in ZONE_200})
    expected.update({b: None for b in ZONE_NONE})
    for feature in areas_doc()["features"]:
        area = Area(
            id=feature["id"],
            footprint=[tuple(p) for p in feature["geometry"]["coordinates"][0]],
        )
        got = max_zone_overlap(area, zones)
        want = expected[area.id]
        assert got == want, f"building {area.id}: overlap {got}, expected {want}"


def main() -> None:
    check_zone_memberships()
    OUT.mkdir(parents=True, exist_ok=True)

    def dump(name: str, doc: dict) -> None:
        (OUT / name).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")

    def dump_script(name: str, records: list[dict]) -> None:
        text = "\n".join(json.dumps(r) for r in records) + "\n"
        (OUT / name).write_text(text, encoding="utf-8")

    dump("bundle.json", bundle_doc())
    dump("network.json", network_doc())
    dump("areas.geojson", areas_doc())
    dump("threat_zones.geojson", zones_doc())
    dump("substances.json", {"chlorine": {"a": -8.29, "b": 0.92, "n": 2}})
    dump_script("building17.jsonl", building17_script())
    dump_script("scenario1.jsonl", scenario1_script())
    dump_script("scenario2.jsonl", scenario2_script())
    print(f"wrote bundle to {OUT}")


if __name__ == "__main__":
    main()
