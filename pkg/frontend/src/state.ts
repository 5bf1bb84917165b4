/** Console view state: selection, cursor, form, connection status.
 *
 * A single mutable store with subscribe/notify; rendering happens only in
 * response to state changes, and state changes happen only in response to
 * acknowledged server data (no optimistic updates anywhere).
 */

import { emptyForm, type ObservationForm } from "./form.js";
import { clampCursor, type Cursor } from "./timeline.js";

export type ConnectionStatus = "connecting" | "open" | "lost";

export interface ConsoleViewState {
  targetNode: string;
  targetState: string;
  selectedArea: string | null;
  cursor: Cursor;
  maxSeq: number;
  form: ObservationForm;
  connection: ConnectionStatus;
  lastError: string | null;
}

export function initialState(): ConsoleViewState {
  return {
    targetNode: "",
    targetState: "",
    selectedArea: null,
    cursor: "live",
    maxSeq: 0,
    form: emptyForm(),
    connection: "connecting",
    lastError: null,
  };
}

export type Listener = (state: ConsoleViewState) => void;

export class Store {
  private state: ConsoleViewState = initialState();
  private listeners: Listener[] = [];

  get(): ConsoleViewState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  update(patch: Partial<ConsoleViewState>): void {
    const next = { ...this.state, ...patch };
    next.cursor = clampCursor(next.cursor, next.maxSeq);
    this.state = next;
    for (const listener of this.listeners) listener(next);
  }

  setCursor(cursor: Cursor): void {
    this.update({ cursor });
  }

  /** A new snapshot arrived: extend the cursor range; stay live if live. */
  observeSeq(seq: number): void {
    if (seq > this.state.maxSeq) this.update({ maxSeq: seq });
  }
}
