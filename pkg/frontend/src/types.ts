/** Wire types for the read-only session service. */

export interface SessionMeta {
  methodNames: string[];
  n: number;
  d: number;
  columns: string[];
  params: Record<
    string,
    { resolution: number; gain: number; delta: number; seed: number }
  >;
  provenance: Record<string, unknown>;
}

export interface MapperNodePayload {
  id: number;
  size: number;
  members: number[];
  intervalIndex: number;
  lensValue: number;
}

export interface MapperPayload {
  method: string;
  nodes: MapperNodePayload[];
  /** [nodeIdA, nodeIdB, sharedCount] triples. */
  edges: [number, number, number][];
  color: { attribute: string; agg: string; values: number[] };
}

export interface DistanceMatrixPayload {
  methods: string[];
  matrix: number[][];
}

export interface ProjectionPayload {
  kind: string;
  points: [number, number][];
}

export interface ImportancePayload {
  features: string[];
  levels: Record<string, number[]>;
  order: number[];
}

export interface AttributionsPayload {
  methods: string[];
  importance: ImportancePayload;
}

export interface KdeColumnPayload {
  grid: number[];
  global: number[];
  selection: number[] | null;
  bandwidthGlobal: number;
  bandwidthSelection: number | null;
  divergence: number;
}

export interface SelectionPayload {
  indices: number[];
  provenance: Record<string, unknown>;
  densities: Record<string, number[]>;
  kde: Record<string, KdeColumnPayload>;
  kdeOrder: string[];
  importance: ImportancePayload;
  tableAverages: {
    globalMean: number[];
    selectionMean: number[] | null;
    difference: number[];
  };
}

export type SelectionBody =
  | { type: "nodes"; graph: string; nodeIds: number[] }
  | { type: "points"; indices: number[] }
  | { type: "query"; where: string };

export interface ServiceError {
  code: string;
  message: string;
  stage: string;
}
