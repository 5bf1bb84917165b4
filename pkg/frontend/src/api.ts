/** Typed client for the /v1 service API.
 *
 * The console never computes probabilities: every number it shows comes
 * out of these responses untouched. The fetch function is injectable so
 * tests can fake the server.
 */

import type {
  AreaBeliefs,
  AreaTimeline,
  ChoroplethDoc,
  Metadata,
  ObservationRecord,
  Snapshot,
  SnapshotView,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export type SubmitResult =
  | { kind: "accepted"; observationId: string; snapshots: Snapshot[] }
  | { kind: "invalid"; status: 400; code: string; message: string }
  | { kind: "conflict"; status: 409; code: string; message: string }
  | { kind: "halted"; status: 410; code: string; message: string };

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

export class ApiClient {
  private readonly base: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl: string, fetchFn: FetchLike = fetch) {
    this.base = baseUrl.replace(/\/+$/, "");
    this.fetchFn = fetchFn;
  }

  private async getJson<T>(path: string): Promise<T> {
    const resp = await this.fetchFn(`${this.base}${path}`);
    if (!resp.ok) {
      const body = await resp.json().catch(() => null);
      const err = body?.error ?? { code: "HTTP_ERROR", message: resp.statusText };
      throw new ApiError(resp.status, err.code, err.message);
    }
    return (await resp.json()) as T;
  }

  health(): Promise<{ status: string; halted: boolean; areas: number }> {
    return this.getJson("/v1/health");
  }

  metadata(): Promise<Metadata> {
    return this.getJson("/v1/metadata");
  }

  areas(node?: string, state?: string): Promise<ChoroplethDoc> {
    const params = new URLSearchParams();
    if (node) params.set("node", node);
    if (state) params.set("state", state);
    const query = params.toString();
    return this.getJson(`/v1/areas${query ? `?${query}` : ""}`);
  }

  beliefs(areaId: string): Promise<AreaBeliefs> {
    return this.getJson(`/v1/areas/${encodeURIComponent(areaId)}/beliefs`);
  }

  timeline(areaId: string): Promise<AreaTimeline> {
    return this.getJson(`/v1/areas/${encodeURIComponent(areaId)}/timeline`);
  }

  snapshots(seq: number): Promise<SnapshotView> {
    return this.getJson(`/v1/snapshots?seq=${seq}`);
  }

  /** POST one observation; 400/409/410 map onto distinct result kinds. */
  async submitObservation(record: ObservationRecord): Promise<SubmitResult> {
    const resp = await this.fetchFn(`${this.base}/v1/observations`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(record),
    });
    const body = await resp.json();
    if (resp.ok && body.accepted) {
      return {
        kind: "accepted",
        observationId: body.observation_id,
        snapshots: body.snapshots ?? [],
      };
    }
    const error = body?.error ?? { code: "HTTP_ERROR", message: resp.statusText };
    if (resp.status === 409) {
      return { kind: "conflict", status: 409, code: error.code, message: error.message };
    }
    if (resp.status === 410) {
      return { kind: "halted", status: 410, code: error.code, message: error.message };
    }
    return { kind: "invalid", status: 400, code: error.code, message: error.message };
  }
}
