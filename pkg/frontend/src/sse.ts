/** Snapshot push-stream subscription (server-sent events).
 *
 * One subscription per console; reconnects with backoff and reports
 * connection status so the map can show a banner instead of going stale
 * silently. The EventSource constructor is injectable for tests.
 */

import type { Snapshot } from "./types.js";

export interface EventSourceLike {
  // eslint-style `any` here mirrors the DOM EventSource handler slots so the
  // real constructor is structurally assignable.
  onerror: ((ev: any) => any) | null;
  onopen: ((ev: any) => any) | null;
  addEventListener(type: "snapshot", handler: (ev: { data: string }) => void): void;
  close(): void;
}

export type EventSourceFactory = (url: string) => EventSourceLike;

export interface StreamHandlers {
  onSnapshot: (snap: Snapshot) => void;
  onStatus?: (status: "connecting" | "open" | "lost") => void;
}

export class SnapshotStream {
  private source: EventSourceLike | null = null;
  private closed = false;
  private retryMs = 1000;

  constructor(
    private readonly url: string,
    private readonly factory: EventSourceFactory,
  ) {}

  connect(handlers: StreamHandlers): void {
    if (this.closed) return;
    handlers.onStatus?.("connecting");
    const source = this.factory(this.url);
    this.source = source;
    source.onopen = () => {
      this.retryMs = 1000;
      handlers.onStatus?.("open");
    };
    source.addEventListener("snapshot", (ev) => {
      handlers.onSnapshot(JSON.parse(ev.data) as Snapshot);
    });
    source.onerror = () => {
      handlers.onStatus?.("lost");
      source.close();
      if (!this.closed) {
        setTimeout(() => this.connect(handlers), this.retryMs);
        this.retryMs = Math.min(this.retryMs * 2, 15000);
      }
    };
  }

  close(): void {
    this.closed = true;
    this.source?.close();
  }
}
