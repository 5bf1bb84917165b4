/** Shared fakes for the unit tests. */

import type { FetchLike } from "../src/api.js";
import type { ChoroplethDoc, Metadata, Snapshot } from "../src/types.js";

export function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

/** Route-table fetch fake; records every request it serves. */
export function fakeFetch(
  routes: Record<string, (init?: RequestInit) => Response>,
): { fetch: FetchLike; calls: string[] } {
  const calls: string[] = [];
  const fetchFn: FetchLike = async (url, init) => {
    calls.push(url);
    const path = url.replace(/^https?:\/\/[^/]+/, "");
    for (const [prefix, handler] of Object.entries(routes)) {
      if (path.startsWith(prefix)) return handler(init);
    }
    return jsonResponse({ error: { code: "NOT_FOUND", message: path } }, 404);
  };
  return { fetch: fetchFn, calls };
}

export const TEST_META: Metadata = {
  nodes: [
    { id: "People in Building", states: ["True", "False"], critical_states: ["True"] },
    {
      id: "Critical Gas Dose in Building",
      states: ["True", "False"],
      critical_states: ["True"],
    },
    { id: "Building Type", states: ["Office", "Production", "Mixed"], critical_states: [] },
  ],
  key_nodes: ["People in Building"],
  tiers: ["RS1", "RS2", "RS3"],
  areas: [
    { id: "1", attributes: { building_type: "Office" } },
    { id: "17", attributes: { building_type: "Production" } },
  ],
  map_target: { node: "People in Building", state: "True" },
};

export function square(x0: number, y0: number, size = 40): number[][] {
  return [
    [x0, y0],
    [x0 + size, y0],
    [x0 + size, y0 + size],
    [x0, y0 + size],
    [x0, y0],
  ];
}

export function liveDoc(values: Record<string, number>): ChoroplethDoc {
  return {
    type: "FeatureCollection",
    features: Object.entries(values).map(([id, probability], i) => ({
      type: "Feature",
      id,
      geometry: { type: "Polygon", coordinates: [square(i * 60, 0)] },
      properties: { area_id: id, probability, confirmed: false },
    })),
  };
}

export function snapshot(
  areaId: string,
  seq: number,
  probs: Record<string, number>,
  trigger: string | null = null,
): Snapshot {
  const marginals: Snapshot["marginals"] = {};
  for (const [node, p] of Object.entries(probs)) {
    marginals[node] = { True: p, False: 1 - p };
  }
  return { seq, time: null, area_id: areaId, trigger, marginals };
}
