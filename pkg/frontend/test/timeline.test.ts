import { describe, expect, it } from "vitest";

import { applySnapshotView, chartSeries, clampCursor, tracePolyline } from "../src/timeline.js";
import { liveDoc, snapshot } from "./helpers.js";

const NODE = "People in Building";

describe("clampCursor", () => {
  it("keeps live as live", () => {
    expect(clampCursor("live", 7)).toBe("live");
  });

  it("clamps out-of-range cursors into [0, maxSeq]", () => {
    expect(clampCursor(-3, 7)).toBe(0);
    expect(clampCursor(99, 7)).toBe(7);
    expect(clampCursor(4.9, 7)).toBe(4);
  });
});

describe("applySnapshotView", () => {
  it("swaps in the snapshot probabilities without touching geometry", () => {
    const live = liveDoc({ "1": 0.5, "17": 0.9 });
    const view = {
      seq: 2,
      max_seq: 5,
      areas: {
        "1": snapshot("1", 2, { [NODE]: 0.111 }),
        "17": snapshot("17", 2, { [NODE]: 0.222 }),
      },
    };
    const doc = applySnapshotView(live, view, NODE, "True");
    expect(doc.features.map((f) => f.properties.probability)).toEqual([0.111, 0.222]);
    expect(doc.features[0]!.geometry).toEqual(live.features[0]!.geometry);
  });

  it("drops confirmation badges on historical views", () => {
    const live = liveDoc({ "1": 1 });
    live.features[0]!.properties.confirmed = true;
    const view = { seq: 0, max_seq: 0, areas: { "1": snapshot("1", 0, { [NODE]: 1 }) } };
    const doc = applySnapshotView(live, view, NODE, "True");
    expect(doc.features[0]!.properties.confirmed).toBe(false);
  });
});

describe("chartSeries", () => {
  it("orders points by seq and copies values verbatim", () => {
    const snaps = [
      snapshot("17", 2, { [NODE]: 0.9337 }, "b17-06"),
      snapshot("17", 0, { [NODE]: 0.61 }),
      snapshot("17", 3, { [NODE]: 0.9922 }, "b17-07"),
    ];
    const [trace] = chartSeries(snaps, [NODE]);
    expect(trace!.points.map((p) => p.value)).toEqual([0.61, 0.9337, 0.9922]);
    expect(trace!.points.map((p) => p.trigger)).toEqual([null, "b17-06", "b17-07"]);
  });

  it("skips nodes missing from a snapshot instead of inventing values", () => {
    const snaps = [snapshot("17", 0, { [NODE]: 0.5 })];
    const [trace] = chartSeries(snaps, ["Some Other Node"]);
    expect(trace!.points).toEqual([]);
  });
});

describe("tracePolyline", () => {
  it("maps the fixed probability axis top-down", () => {
    const trace = {
      node: NODE,
      state: "True",
      points: [
        { seq: 0, time: null, trigger: null, value: 0 },
        { seq: 1, time: null, trigger: null, value: 1 },
      ],
    };
    expect(tracePolyline(trace, 100, 50)).toBe("0.0,50.0 100.0,0.0");
  });

  it("is empty for an empty trace", () => {
    expect(tracePolyline({ node: NODE, state: "True", points: [] }, 100, 50)).toBe("");
  });
});
