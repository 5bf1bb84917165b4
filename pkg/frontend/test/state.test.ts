import { describe, expect, it } from "vitest";

import { Store } from "../src/state.js";

describe("Store", () => {
  it("starts live, connecting, nothing selected", () => {
    const s = new Store().get();
    expect(s.cursor).toBe("live");
    expect(s.connection).toBe("connecting");
    expect(s.selectedArea).toBeNull();
  });

  it("clamps the cursor into the snapshot range on every update", () => {
    const store = new Store();
    store.update({ maxSeq: 5 });
    store.setCursor(12);
    expect(store.get().cursor).toBe(5);
    store.setCursor(-2);
    expect(store.get().cursor).toBe(0);
    store.setCursor("live");
    expect(store.get().cursor).toBe("live");
  });

  it("extends the range as snapshots arrive without leaving live", () => {
    const store = new Store();
    store.observeSeq(3);
    store.observeSeq(2);
    expect(store.get().maxSeq).toBe(3);
    expect(store.get().cursor).toBe("live");
  });

  it("notifies subscribers and honours unsubscribe", () => {
    const store = new Store();
    const seen: number[] = [];
    const off = store.subscribe((s) => seen.push(s.maxSeq));
    store.update({ maxSeq: 1 });
    off();
    store.update({ maxSeq: 2 });
    expect(seen).toEqual([1]);
  });
});
