import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { App } from "../src/app.js";
import { forceLayout } from "../src/layout.js";
import { dataTabView, importanceView, mapperView } from "../src/render.js";
import { Store } from "../src/state.js";
import type { SelectionPayload } from "../src/types.js";
import { fakeServer, MAPPERS, META } from "./helpers.js";

async function appWithServer() {
  const server = fakeServer();
  const app = new App(new ApiClient("", server.fetch), new Store());
  await app.init();
  return { app, server };
}

function renderedAnalytics(payload: SelectionPayload, pair: [string, string]) {
  const layouts = Object.fromEntries(
    Object.entries(MAPPERS).map(([name, mapper]) => [name, forceLayout(mapper, 420, 320)]),
  );
  return {
    graphs: pair.map((method) =>
      mapperView(MAPPERS[method], layouts[method], payload.densities[method]),
    ),
    dataTab: dataTabView(META.columns, payload, 180, 60),
    importance: importanceView(payload.importance, pair),
  };
}

describe("selection equivalence", () => {
  it("query box and point brush with the same index set render identical analytics", async () => {
    const { app, server } = await appWithServer();

    await app.brushPoints([2, 3]);
    const viaPoints = app.store.get().selection!;

    await app.submitQuery("pred > 0.5");
    const viaQuery = app.store.get().selection!;

    // intercepted request payloads differ by construction...
    const posts = server.requests.filter((r) => r.url.endsWith("/api/selection"));
    expect(posts.map((p) => p.body?.type)).toEqual(["points", "query"]);

    // ...but the applied analytics are identical apart from provenance
    const stripProvenance = ({ provenance: _omitted, ...rest }: SelectionPayload) => rest;
    expect(stripProvenance(viaQuery)).toEqual(stripProvenance(viaPoints));

    const pair = app.store.get().methodPair!;
    expect(renderedAnalytics(viaQuery, pair)).toEqual(renderedAnalytics(viaPoints, pair));
  });

  it("node brush resolving to the same index set is also equivalent", async () => {
    const { app } = await appWithServer();

    await app.brushNodes("A", [1]); // node 1 of A holds members {2, 3}
    const viaNodes = app.store.get().selection!;
    await app.brushPoints([2, 3]);
    const viaPoints = app.store.get().selection!;

    const stripProvenance = ({ provenance: _omitted, ...rest }: SelectionPayload) => rest;
    expect(stripProvenance(viaNodes)).toEqual(stripProvenance(viaPoints));
  });
});

describe("density propagation", () => {
  it("brushing every node yields density 1.0 on all nodes of the counterpart graph", async () => {
    const { app } = await appWithServer();

    await app.brushNodes("A", MAPPERS.A.nodes.map((n) => n.id));
    const payload = app.store.get().selection!;
    expect(payload.indices).toEqual([0, 1, 2, 3]);

    const counterpart = mapperView(
      MAPPERS.B,
      forceLayout(MAPPERS.B, 420, 320),
      payload.densities.B,
    );
    for (const node of counterpart.nodes) {
      expect(node.density).toBe(1.0);
    }
  });

  it("an empty brush reverts every view to global", async () => {
    const { app } = await appWithServer();
    await app.brushPoints([1, 2]);
    expect(app.store.get().selection).not.toBeNull();

    await app.brushNodes("A", []);
    const state = app.store.get();
    expect(state.selection).toBeNull();

    const graph = mapperView(MAPPERS.A, forceLayout(MAPPERS.A, 420, 320), null);
    for (const node of graph.nodes) expect(node.density).toBeNull();
    expect(dataTabView(META.columns, null, 180, 60)).toEqual({ curves: [], rows: [] });
  });
});
