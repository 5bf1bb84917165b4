/** Wire types mirroring the /v1 service API. */

export interface StateProbs {
  [state: string]: number;
}

export interface Marginals {
  [node: string]: StateProbs;
}

export interface Snapshot {
  seq: number;
  time: string | null;
  area_id: string;
  trigger: string | null;
  marginals: Marginals;
}

export interface ChoroplethProperties {
  area_id: string;
  probability: number;
  confirmed: boolean;
}

export interface ChoroplethFeature {
  type: "Feature";
  id: string;
  geometry: { type: "Polygon"; coordinates: number[][][] };
  properties: ChoroplethProperties;
}

export interface ChoroplethDoc {
  type: "FeatureCollection";
  features: ChoroplethFeature[];
}

export interface NodeMeta {
  id: string;
  states: string[];
  critical_states: string[];
}

export interface Metadata {
  nodes: NodeMeta[];
  key_nodes: string[];
  tiers: string[];
  areas: { id: string; attributes: Record<string, string> }[];
  map_target: { node: string; state: string };
}

export interface SnapshotView {
  seq: number;
  max_seq: number;
  areas: { [areaId: string]: Snapshot };
}

export interface AreaBeliefs {
  area_id: string;
  confirmed: string[];
  marginals: Marginals;
}

export interface AreaTimeline {
  area_id: string;
  snapshots: Snapshot[];
}

export type PayloadKind = "state" | "prob_ratio" | "likelihood_ratio";

export interface ObservationRecord {
  id?: string;
  time: string;
  location: string[] | "all";
  node: string;
  tier: string;
  payload:
    | { state: string }
    | { prob_ratio: number[] }
    | { likelihood_ratio: number[] };
  source: string;
}
