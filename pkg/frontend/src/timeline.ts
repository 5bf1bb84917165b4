/** Timeline scrubbing and detail-chart series.
 *
 * Historical views come exclusively from GET /v1/snapshots (the engine is
 * never touched); the rendered probabilities are lifted verbatim out of
 * the snapshot marginals the server returned.
 */

import type { ChoroplethDoc, Snapshot, SnapshotView } from "./types.js";

export type Cursor = number | "live";

export function clampCursor(cursor: Cursor, maxSeq: number): Cursor {
  if (cursor === "live") return "live";
  if (!Number.isFinite(cursor)) return "live";
  return Math.max(0, Math.min(Math.floor(cursor), maxSeq));
}

/** Replace the probabilities of a live choropleth with the values a
 * snapshot view reported, feature geometry untouched. Areas absent from
 * the view (none exist in practice: every area has a prior snapshot)
 * keep no value and are marked with probability NaN to surface bugs
 * rather than hide them. Historical views carry no confirmation badges. */
export function applySnapshotView(
  live: ChoroplethDoc,
  view: SnapshotView,
  node: string,
  state: string,
): ChoroplethDoc {
  return {
    type: "FeatureCollection",
    features: live.features.map((f) => {
      const snap = view.areas[f.properties.area_id];
      const probability = snap?.marginals[node]?.[state] ?? NaN;
      return {
        ...f,
        properties: {
          area_id: f.properties.area_id,
          probability,
          confirmed: false,
        },
      };
    }),
  };
}

export interface TracePoint {
  seq: number;
  time: string | null;
  trigger: string | null;
  value: number;
}

export interface Trace {
  node: string;
  state: string;
  points: TracePoint[];
}

/** Per-node probability traces for one area's snapshot history
 * (the detail chart beside the map). Values are copied verbatim. */
export function chartSeries(
  snapshots: Snapshot[],
  nodes: string[],
  state = "True",
): Trace[] {
  const ordered = [...snapshots].sort((a, b) => a.seq - b.seq);
  return nodes.map((node) => ({
    node,
    state,
    points: ordered
      .filter((s) => s.marginals[node]?.[state] !== undefined)
      .map((s) => ({
        seq: s.seq,
        time: s.time,
        trigger: s.trigger,
        value: s.marginals[node]![state]!,
      })),
  }));
}

/** Polyline points for an SVG chart, x spread by snapshot order and y on
 * the fixed 0..1 probability axis. */
export function tracePolyline(
  trace: Trace,
  width: number,
  height: number,
): string {
  const n = trace.points.length;
  if (n === 0) return "";
  const dx = n > 1 ? width / (n - 1) : 0;
  return trace.points
    .map((p, i) => `${(i * dx).toFixed(1)},${((1 - p.value) * height).toFixed(1)}`)
    .join(" ");
}
