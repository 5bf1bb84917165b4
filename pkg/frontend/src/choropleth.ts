/** Choropleth rendering: FeatureCollection -> SVG markup.
 *
 * The colour ramp has a fixed 0..1 domain so panels are comparable across
 * time steps; it is never rescaled to the data. Probabilities are
 * rendered verbatim (String(value)): the console displays what the
 * service sent, nothing recomputed, nothing clamped.
 */

import type { ChoroplethDoc, ChoroplethFeature } from "./types.js";

/** Sequential light-to-dark ramp over the fixed [0, 1] domain. */
export function colorFor(probability: number): string {
  const t = Math.max(0, Math.min(1, probability));
  // light parchment -> deep red
  const from = { r: 255, g: 245, b: 235 };
  const to = { r: 153, g: 0, b: 13 };
  const r = Math.round(from.r + (to.r - from.r) * t);
  const g = Math.round(from.g + (to.g - from.g) * t);
  const b = Math.round(from.b + (to.b - from.b) * t);
  return `rgb(${r},${g},${b})`;
}

export interface RenderOptions {
  width?: number;
  height?: number;
  selectedArea?: string | null;
}

interface Bounds {
  minX: number;
  minY: number;
  maxX: number;
  maxY: number;
}

function boundsOf(features: ChoroplethFeature[]): Bounds {
  const b: Bounds = { minX: Infinity, minY: Infinity, maxX: -Infinity, maxY: -Infinity };
  for (const f of features) {
    for (const ring of f.geometry.coordinates) {
      for (const [x, y] of ring as [number, number][]) {
        b.minX = Math.min(b.minX, x);
        b.minY = Math.min(b.minY, y);
        b.maxX = Math.max(b.maxX, x);
        b.maxY = Math.max(b.maxY, y);
      }
    }
  }
  return b;
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Render the belief map. Confirmed areas get a distinct outline class;
 * each polygon carries its area id and the verbatim probability. */
export function renderChoropleth(doc: ChoroplethDoc, opts: RenderOptions = {}): string {
  const width = opts.width ?? 640;
  const height = opts.height ?? 640;
  if (doc.features.length === 0) {
    return `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}"></svg>`;
  }
  const b = boundsOf(doc.features);
  const pad = 20;
  const scale = Math.min(
    (width - 2 * pad) / Math.max(b.maxX - b.minX, 1e-9),
    (height - 2 * pad) / Math.max(b.maxY - b.minY, 1e-9),
  );
  const px = (x: number) => pad + (x - b.minX) * scale;
  // GeoJSON y grows north; SVG y grows down.
  const py = (y: number) => height - pad - (y - b.minY) * scale;

  const shapes = doc.features
    .map((f) => {
      const { area_id, probability, confirmed } = f.properties;
      const ring = f.geometry.coordinates[0] ?? [];
      const points = (ring as [number, number][])
        .map(([x, y]) => `${px(x).toFixed(1)},${py(y).toFixed(1)}`)
        .join(" ");
      const classes = ["area", confirmed ? "confirmed" : "", opts.selectedArea === area_id ? "selected" : ""]
        .filter(Boolean)
        .join(" ");
      const label = `${area_id}: ${String(probability)}`;
      return (
        `<polygon class="${classes}" data-area="${escapeXml(area_id)}" ` +
        `data-probability="${String(probability)}" fill="${colorFor(probability)}" ` +
        `points="${points}"><title>${escapeXml(label)}</title></polygon>`
      );
    })
    .join("");

  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">` +
    `<style>.area{stroke:#555;stroke-width:1}.confirmed{stroke:#062bd4;stroke-width:3}` +
    `.selected{stroke:#111;stroke-width:2.5;stroke-dasharray:4 2}</style>` +
    `${shapes}${renderLegend(width, height)}</svg>`
  );
}

function renderLegend(width: number, height: number): string {
  const steps = 6;
  const sw = 28;
  const x0 = width - (steps * sw + 70);
  const y = height - 26;
  let cells = "";
  for (let i = 0; i < steps; i++) {
    const v = i / (steps - 1);
    cells +=
      `<rect x="${x0 + i * sw}" y="${y}" width="${sw}" height="12" fill="${colorFor(v)}"/>` +
      `<text x="${x0 + i * sw}" y="${y + 24}" font-size="9">${v.toFixed(1)}</text>`;
  }
  return `<g class="legend">${cells}<text x="${x0}" y="${y - 5}" font-size="10">P = 0 to 1</text></g>`;
}
