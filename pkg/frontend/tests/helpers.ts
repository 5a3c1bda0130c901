/** Test doubles: a canned four-point session and a fake fetch.
 *
 * The fake service computes selection analytics from the index set alone —
 * matching the real service's selection-equivalence guarantee — while the
 * provenance block echoes the request shape, also like the real thing.
 */

import type { FetchLike } from "../src/api.js";
import type {
  MapperPayload,
  SelectionBody,
  SelectionPayload,
  SessionMeta,
} from "../src/types.js";

export const META: SessionMeta = {
  methodNames: ["A", "B"],
  n: 4,
  d: 2,
  columns: ["f0", "f1"],
  params: {
    A: { resolution: 2, gain: 0.4, delta: 0.3, seed: 0 },
    B: { resolution: 2, gain: 0.4, delta: 0.3, seed: 0 },
  },
  provenance: { seed: 0 },
};

export const MAPPERS: Record<string, MapperPayload> = {
  A: {
    method: "A",
    nodes: [
      { id: 0, size: 2, members: [0, 1], intervalIndex: 0, lensValue: 0.075 },
      { id: 1, size: 2, members: [2, 3], intervalIndex: 1, lensValue: 0.925 },
    ],
    edges: [],
    color: { attribute: "pred", agg: "mean", values: [0.075, 0.925] },
  },
  B: {
    method: "B",
    nodes: [
      { id: 0, size: 3, members: [0, 1, 2], intervalIndex: 0, lensValue: 0.35 },
      { id: 1, size: 2, members: [2, 3], intervalIndex: 1, lensValue: 0.925 },
    ],
    edges: [[0, 1, 1]],
    color: { attribute: "pred", agg: "mean", values: [0.35, 0.925] },
  },
};

export const MATRIX = { methods: ["A", "B"], matrix: [[0, 0.5], [0.5, 0]] };

export const PROJECTION = {
  kind: "pca",
  points: [
    [-1.0, 0.1],
    [-0.9, -0.1],
    [0.9, 0.1],
    [1.0, -0.1],
  ] as [number, number][],
};

export const QUERY_RESULTS: Record<string, number[]> = {
  "pred > 0.5": [2, 3],
  "f0 > 100": [],
};

const GRID = [0, 0.25, 0.5, 0.75, 1];

function key(indices: number[]): string {
  return [...indices].sort((a, b) => a - b).join(",");
}

/** Deterministic analytics derived only from the selected index set. */
export function selectionPayload(
  indices: number[],
  provenance: Record<string, unknown>,
): SelectionPayload {
  const sorted = [...new Set(indices)].sort((a, b) => a - b);
  const densities: Record<string, number[]> = {};
  for (const [name, mapper] of Object.entries(MAPPERS)) {
    densities[name] = mapper.nodes.map(
      (node) =>
        node.members.filter((m) => sorted.includes(m)).length / node.members.length,
    );
  }
  const spread = sorted.length + 1;
  const kdeColumn = (offset: number) => ({
    grid: GRID,
    global: GRID.map((g) => 1 - Math.abs(g - 0.5)),
    selection: sorted.length
      ? GRID.map((g) => 1 - Math.abs(g - offset / spread))
      : null,
    bandwidthGlobal: 0.2,
    bandwidthSelection: sorted.length ? 0.1 : null,
    divergence: sorted.length ? 0.1 * (offset + 1) * sorted.length : 0,
  });
  return {
    indices: sorted,
    provenance,
    densities,
    kde: { f0: kdeColumn(0), f1: kdeColumn(1) },
    kdeOrder: sorted.length ? ["f1", "f0"] : ["f0", "f1"],
    importance: {
      features: ["f0", "f1"],
      levels: {
        A: [5 * (sorted.length ? key(sorted).length / 10 : 0.4), -2],
        B: [1, 3],
      },
      order: [1, 0],
    },
    tableAverages: {
      globalMean: [0.5, 0.5],
      selectionMean: sorted.length ? [sorted[0], sorted[sorted.length - 1]] : null,
      difference: sorted.length ? [sorted[0] - 0.5, sorted[sorted.length - 1] - 0.5] : [0, 0],
    },
  };
}

export interface CapturedRequest {
  url: string;
  body: SelectionBody | null;
}

export interface Deferred {
  body: SelectionBody;
  resolve(): void;
  reject(status: number, code: string, message: string): void;
}

export interface FakeServer {
  fetch: FetchLike;
  requests: CapturedRequest[];
  /** Selection responses awaiting manual release (when manual = true). */
  pending: Deferred[];
}

function respond(status: number, payload: unknown) {
  return {
    ok: status < 400,
    status,
    json: () => Promise.resolve(payload),
  };
}

export function fakeServer(options: { manual?: boolean } = {}): FakeServer {
  const requests: CapturedRequest[] = [];
  const pending: Deferred[] = [];

  const answer = (body: SelectionBody) => {
    if (body.type === "nodes") {
      const mapper = MAPPERS[body.graph];
      if (!mapper) {
        return respond(404, {
          code: "unknown-method",
          message: `no mapper graph for method '${body.graph}'`,
          stage: "service",
        });
      }
      const members = body.nodeIds.flatMap(
        (id) => mapper.nodes.find((n) => n.id === id)?.members ?? [],
      );
      return respond(
        200,
        selectionPayload(members, { type: "nodes", graph: body.graph, nodeIds: body.nodeIds }),
      );
    }
    if (body.type === "points") {
      return respond(200, selectionPayload(body.indices, { type: "points" }));
    }
    const hit = QUERY_RESULTS[body.where];
    if (hit === undefined) {
      const position = body.where.length - 1;
      return respond(400, {
        code: "query-syntax",
        message: `expected a number (position ${position}, expected a number)`,
        stage: "service",
      });
    }
    return respond(200, selectionPayload(hit, { type: "query", where: body.where }));
  };

  const fetchFn: FetchLike = (url, init) => {
    const parsedBody = init?.body ? (JSON.parse(init.body) as SelectionBody) : null;
    requests.push({ url, body: parsedBody });
    if (url.endsWith("/api/session/meta")) return Promise.resolve(respond(200, META));
    if (url.includes("/api/mapper/")) {
      const method = decodeURIComponent(url.split("/api/mapper/")[1].split("?")[0]);
      return Promise.resolve(
        MAPPERS[method]
          ? respond(200, MAPPERS[method])
          : respond(404, {
              code: "unknown-method",
              message: `no mapper graph for method '${method}'`,
              stage: "service",
            }),
      );
    }
    if (url.endsWith("/api/distance-matrix")) return Promise.resolve(respond(200, MATRIX));
    if (url.includes("/api/projection")) return Promise.resolve(respond(200, PROJECTION));
    if (url.includes("/api/attributions")) {
      return Promise.resolve(
        respond(200, {
          methods: META.methodNames,
          importance: selectionPayload([], { type: "points" }).importance,
        }),
      );
    }
    if (url.endsWith("/api/selection") && parsedBody) {
      if (!options.manual) return Promise.resolve(answer(parsedBody));
      return new Promise((resolvePromise) => {
        pending.push({
          body: parsedBody,
          resolve: () => resolvePromise(answer(parsedBody)),
          reject: (status, code, message) =>
            resolvePromise(respond(status, { code, message, stage: "service" })),
        });
      });
    }
    return Promise.resolve(
      respond(404, { code: "not-found", message: url, stage: "service" }),
    );
  };

  return { fetch: fetchFn, requests, pending };
}
