/** Observation entry form: the five required fields plus a source label.
 *
 * The form only ever submits once every field passes client-side
 * validation against the bundle metadata (node names, state names, tiers
 * come from the service, never from hardcoded lists).
 */

import type { ApiClient, SubmitResult } from "./api.js";
import type { Metadata, ObservationRecord, PayloadKind } from "./types.js";

export interface ObservationForm {
  time: string;
  allAreas: boolean;
  areas: string[];
  node: string;
  tier: string;
  payloadKind: PayloadKind;
  state: string;
  /** Comma-separated numbers for ratio payloads. */
  vector: string;
  source: string;
}

export function emptyForm(): ObservationForm {
  return {
    time: "",
    allAreas: false,
    areas: [],
    node: "",
    tier: "",
    payloadKind: "state",
    state: "",
    vector: "",
    source: "",
  };
}

export function parseVector(text: string): number[] | null {
  const parts = text.split(",").map((p) => p.trim()).filter((p) => p.length > 0);
  if (parts.length === 0) return null;
  const values = parts.map(Number);
  return values.every((v) => Number.isFinite(v) && v >= 0) ? values : null;
}

/** Problems preventing submission; an empty list means the form is valid. */
export function validateForm(form: ObservationForm, meta: Metadata): string[] {
  const problems: string[] = [];

  if (!form.time || Number.isNaN(Date.parse(form.time))) {
    problems.push("time: enter a valid timestamp");
  }

  if (!form.allAreas && form.areas.length === 0) {
    problems.push("location: select at least one area or all areas");
  } else if (!form.allAreas) {
    const known = new Set(meta.areas.map((a) => a.id));
    for (const id of form.areas) {
      if (!known.has(id)) problems.push(`location: unknown area ${id}`);
    }
  }

  const node = meta.nodes.find((n) => n.id === form.node);
  if (!node) {
    problems.push("node: pick a network node");
  }

  if (!meta.tiers.includes(form.tier)) {
    problems.push("reliability: pick a tier");
  }

  if (form.payloadKind === "state") {
    if (!node) {
      // node problem already reported
    } else if (!node.states.includes(form.state)) {
      problems.push("state: pick one of the node's states");
    }
  } else {
    const vector = parseVector(form.vector);
    if (!vector) {
      problems.push("state: enter comma-separated non-negative numbers");
    } else if (node && vector.length !== node.states.length) {
      problems.push(
        `state: expected ${node.states.length} values for ${node.id}, got ${vector.length}`,
      );
    }
    if (form.tier !== "RS3") {
      problems.push("reliability: ratio payloads require an RS3 source");
    }
  }

  return problems;
}

export function formToRecord(form: ObservationForm): ObservationRecord {
  let payload: ObservationRecord["payload"];
  if (form.payloadKind === "state") {
    payload = { state: form.state };
  } else {
    const vector = parseVector(form.vector) ?? [];
    payload =
      form.payloadKind === "prob_ratio"
        ? { prob_ratio: vector }
        : { likelihood_ratio: vector };
  }
  return {
    time: new Date(form.time).toISOString().replace(/\.\d{3}Z$/, "Z"),
    location: form.allAreas ? "all" : [...form.areas],
    node: form.node,
    tier: form.tier,
    payload,
    source: form.source,
  };
}

export type FormSubmitResult = SubmitResult | { kind: "blocked"; problems: string[] };

/** Validate, then POST. An invalid form never reaches the network. */
export async function submitForm(
  api: ApiClient,
  form: ObservationForm,
  meta: Metadata,
): Promise<FormSubmitResult> {
  const problems = validateForm(form, meta);
  if (problems.length > 0) {
    return { kind: "blocked", problems };
  }
  return api.submitObservation(formToRecord(form));
}
