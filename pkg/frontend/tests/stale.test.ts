import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { App } from "../src/app.js";
import { Store } from "../src/state.js";
import { fakeServer } from "./helpers.js";

describe("stale-response discipline under rapid brushes", () => {
  it("discards an older response that arrives after a newer request", async () => {
    const server = fakeServer({ manual: true });
    const app = new App(new ApiClient("", server.fetch), new Store());
    await app.init();

    const first = app.brushPoints([0, 1]);
    const second = app.brushPoints([2, 3]);
    expect(server.pending.length).toBe(2);

    // the newer response lands first...
    server.pending[1].resolve();
    await second;
    expect(app.store.get().selection?.indices).toEqual([2, 3]);

    // ...then the stale one arrives and must be ignored
    server.pending[0].resolve();
    await first;
    expect(app.store.get().selection?.indices).toEqual([2, 3]);
    expect(app.store.get().appliedTag).toBe(2);
  });

  it("newest response wins regardless of arrival order", async () => {
    const server = fakeServer({ manual: true });
    const app = new App(new ApiClient("", server.fetch), new Store());
    await app.init();

    const brushes = [app.brushPoints([0]), app.brushPoints([1]), app.brushPoints([0, 2])];
    // release in shuffled order: 2nd, 3rd (newest), 1st
    server.pending[1].resolve();
    server.pending[2].resolve();
    server.pending[0].resolve();
    await Promise.all(brushes);

    expect(app.store.get().selection?.indices).toEqual([0, 2]);
  });

  it("a failed newest request keeps the previous rendered state", async () => {
    const server = fakeServer({ manual: true });
    const app = new App(new ApiClient("", server.fetch), new Store());
    await app.init();

    const ok = app.brushPoints([1, 2]);
    server.pending[0].resolve();
    await ok;
    const applied = app.store.get().selection;

    const failing = app.brushPoints([3]);
    server.pending[1].reject(500, "boom", "backend exploded");
    await failing;

    expect(app.store.get().selection).toBe(applied);
    expect(app.store.get().banner).toBe("backend exploded");
  });
});
