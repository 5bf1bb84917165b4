/** Browser entry: wires the map, observation form, detail chart, and
 * timeline scrubber to the service. Base URL comes from the single
 * `data-api` attribute on the script tag (default: same origin).
 */

import { ApiClient } from "./api.js";
import { renderChoropleth } from "./choropleth.js";
import { emptyForm, submitForm, type ObservationForm } from "./form.js";
import { SnapshotStream } from "./sse.js";
import { Store } from "./state.js";
import { applySnapshotView, chartSeries, clampCursor, tracePolyline } from "./timeline.js";
import type { ChoroplethDoc, Metadata } from "./types.js";

const TRACE_COLORS = ["#99000d", "#08519c", "#006d2c", "#54278f"];

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

async function boot(): Promise<void> {
  const script = document.querySelector("script[data-api]");
  const base = script?.getAttribute("data-api") || "";
  const api = new ApiClient(base);
  const store = new Store();
  const meta: Metadata = await api.metadata();

  store.update({
    targetNode: meta.map_target.node,
    targetState: meta.map_target.state,
  });

  const mapHost = el<HTMLDivElement>("map");
  const chartHost = el<HTMLDivElement>("chart");
  const banner = el<HTMLDivElement>("banner");
  const scrubber = el<HTMLInputElement>("scrubber");
  const scrubLabel = el<HTMLSpanElement>("scrub-label");
  const liveButton = el<HTMLButtonElement>("live");
  const formStatus = el<HTMLDivElement>("form-status");

  let liveDoc: ChoroplethDoc = { type: "FeatureCollection", features: [] };

  async function refreshMap(): Promise<void> {
    const { targetNode, targetState, cursor, selectedArea } = store.get();
    let doc: ChoroplethDoc;
    if (cursor === "live") {
      liveDoc = await api.areas(targetNode, targetState);
      doc = liveDoc;
    } else {
      if (liveDoc.features.length === 0) {
        liveDoc = await api.areas(targetNode, targetState);
      }
      const view = await api.snapshots(cursor);
      doc = applySnapshotView(liveDoc, view, targetNode, targetState);
    }
    mapHost.innerHTML = renderChoropleth(doc, { selectedArea });
    for (const polygon of mapHost.querySelectorAll<SVGPolygonElement>("polygon.area")) {
      polygon.addEventListener("click", () => {
        store.update({ selectedArea: polygon.dataset.area ?? null });
      });
    }
  }

  async function refreshChart(): Promise<void> {
    const { selectedArea, cursor } = store.get();
    if (!selectedArea) {
      chartHost.innerHTML = "<p>Select a building on the map.</p>";
      return;
    }
    const timeline = await api.timeline(selectedArea);
    const upTo =
      cursor === "live"
        ? timeline.snapshots
        : timeline.snapshots.filter((s) => s.seq <= cursor);
    const traces = chartSeries(upTo, meta.key_nodes);
    const w = 360;
    const h = 160;
    const lines = traces
      .map(
        (t, i) =>
          `<polyline fill="none" stroke="${TRACE_COLORS[i % TRACE_COLORS.length]}" ` +
          `stroke-width="2" points="${tracePolyline(t, w, h)}"/>`,
      )
      .join("");
    const labels = traces
      .map(
        (t, i) =>
          `<text x="4" y="${14 + i * 14}" font-size="10" ` +
          `fill="${TRACE_COLORS[i % TRACE_COLORS.length]}">${t.node}</text>`,
      )
      .join("");
    chartHost.innerHTML =
      `<h3>Building ${selectedArea}</h3>` +
      `<svg xmlns="http://www.w3.org/2000/svg" width="${w}" height="${h}" ` +
      `style="background:#fafafa;border:1px solid #ddd">${lines}${labels}</svg>`;
  }

  function refreshScrubber(): void {
    const { cursor, maxSeq } = store.get();
    scrubber.max = String(maxSeq);
    if (cursor === "live") {
      scrubber.value = String(maxSeq);
      scrubLabel.textContent = "live";
    } else {
      scrubber.value = String(cursor);
      scrubLabel.textContent = `seq ${cursor}`;
    }
  }

  store.subscribe(() => {
    refreshScrubber();
    void refreshMap()
      .then(refreshChart)
      .catch((err) => {
        banner.textContent = `request failed: ${err instanceof Error ? err.message : err}`;
        banner.className = "lost";
      });
  });

  scrubber.addEventListener("input", () => {
    store.setCursor(clampCursor(Number(scrubber.value), store.get().maxSeq));
  });
  liveButton.addEventListener("click", () => store.setCursor("live"));

  // --- observation form ------------------------------------------------
  const nodeSelect = el<HTMLSelectElement>("f-node");
  const stateSelect = el<HTMLSelectElement>("f-state");
  const tierSelect = el<HTMLSelectElement>("f-tier");
  const areaSelect = el<HTMLSelectElement>("f-areas");
  const allAreas = el<HTMLInputElement>("f-all");
  const timeInput = el<HTMLInputElement>("f-time");
  const kindSelect = el<HTMLSelectElement>("f-kind");
  const vectorInput = el<HTMLInputElement>("f-vector");
  const sourceInput = el<HTMLInputElement>("f-source");

  nodeSelect.innerHTML = meta.nodes
    .map((n) => `<option value="${n.id}">${n.id}</option>`)
    .join("");
  tierSelect.innerHTML = meta.tiers
    .map((t) => `<option value="${t}">${t}</option>`)
    .join("");
  areaSelect.innerHTML = meta.areas
    .map((a) => `<option value="${a.id}">${a.id}</option>`)
    .join("");

  function syncStates(): void {
    const node = meta.nodes.find((n) => n.id === nodeSelect.value);
    stateSelect.innerHTML = (node?.states ?? [])
      .map((s) => `<option value="${s}">${s}</option>`)
      .join("");
  }
  nodeSelect.addEventListener("change", syncStates);
  syncStates();

  function readForm(): ObservationForm {
    return {
      ...emptyForm(),
      time: timeInput.value,
      allAreas: allAreas.checked,
      areas: Array.from(areaSelect.selectedOptions).map((o) => o.value),
      node: nodeSelect.value,
      tier: tierSelect.value,
      payloadKind: kindSelect.value as ObservationForm["payloadKind"],
      state: stateSelect.value,
      vector: vectorInput.value,
      source: sourceInput.value,
    };
  }

  el<HTMLFormElement>("obs-form").addEventListener("submit", (ev) => {
    ev.preventDefault();
    void (async () => {
      const result = await submitForm(api, readForm(), meta);
      switch (result.kind) {
        case "blocked":
          formStatus.textContent = `not sent: ${result.problems.join("; ")}`;
          formStatus.className = "blocked";
          return;
        case "accepted":
          formStatus.textContent = `accepted ${result.observationId}`;
          formStatus.className = "ok";
          return;
        case "conflict":
          formStatus.textContent = `conflict (409): ${result.message}`;
          formStatus.className = "conflict";
          return;
        case "halted":
          formStatus.textContent = `engine halted (410): ${result.message}`;
          formStatus.className = "halted";
          return;
        default:
          formStatus.textContent = `rejected (400) ${result.code}: ${result.message}`;
          formStatus.className = "rejected";
      }
    })();
  });

  // --- live stream --------------------------------------------------------
  const stream = new SnapshotStream(`${base}/v1/events`, (url) => new EventSource(url));
  stream.connect({
    onSnapshot: (snap) => {
      store.observeSeq(snap.seq);
      if (store.get().cursor === "live") {
        // store.update triggers the re-render; no probabilities are
        // computed here, the next GET returns the server's numbers.
        store.update({});
      }
    },
    onStatus: (status) => {
      store.update({ connection: status });
      banner.textContent =
        status === "open" ? "" : status === "lost" ? "connection lost - retrying" : "connecting";
      banner.className = status;
    },
  });

  store.update({});
}

void boot();
