/** Browser bootstrap: draws the five views as SVG/HTML and wires events.
 *
 * Rendering is a thin serialization of the pure view models in render.ts;
 * all interaction goes through the App controller.
 */

import { ApiClient } from "./api.js";
import { App } from "./app.js";
import { forceLayout } from "./layout.js";
import {
  dataTabView,
  heatmapView,
  importanceView,
  mapperView,
  projectionView,
  type MapperViewModel,
} from "./render.js";
import { Store } from "./state.js";
import type { MapperPayload, ViewStateSnapshot } from "./dom-util.js";
import {
  brushRect,
  colorForDensity,
  colorForScale,
  element,
  escapeHtml,
} from "./dom-util.js";

const WIDTH = 420;
const HEIGHT = 320;

function mapperSvg(model: MapperViewModel): string {
  const edges = model.edges
    .map(
      (e) =>
        `<line x1="${e.x1}" y1="${e.y1}" x2="${e.x2}" y2="${e.y2}" stroke="#999" stroke-width="${Math.min(4, Math.sqrt(e.shared))}"/>`,
    )
    .join("");
  const nodes = model.nodes
    .map(
      (n) =>
        `<circle data-node="${n.id}" cx="${n.x}" cy="${n.y}" r="${n.radius}" fill="${colorForDensity(n.density, n.colorValue)}" stroke="#333"><title>node ${n.id}: ${n.size} members</title></circle>`,
    )
    .join("");
  return `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" width="${WIDTH}" height="${HEIGHT}">${edges}${nodes}</svg>`;
}

async function loadGraphs(
  app: App,
  graphs: Map<string, MapperPayload>,
): Promise<void> {
  const state = app.store.get();
  if (!state.meta || !state.methodPair) return;
  for (const method of state.methodPair) {
    const payload = await app.client.getMapper(
      method,
      state.colorAttribute,
      state.colorAgg,
    );
    graphs.set(method, payload);
  }
}

export async function bootstrap(root: HTMLElement, baseUrl: string): Promise<void> {
  const client = new ApiClient(baseUrl, (url, init) => fetch(url, init));
  const store = new Store();
  const app = new App(client, store);

  root.innerHTML = `
    <div class="layout">
      <section id="projection"><h3>Projection</h3><div class="body"></div></section>
      <section id="graph-left"><h3></h3><div class="body"></div></section>
      <section id="graph-right"><h3></h3><div class="body"></div></section>
      <section id="matrix"><h3>Distances</h3><div class="body"></div></section>
      <section id="data-tab"><h3>Data</h3>
        <input id="query-box" placeholder='e.g. "f0" &gt; 0.5 AND pred &lt; 0.2'/>
        <div id="query-error"></div>
        <div class="body"></div>
      </section>
      <section id="importance"><h3>Importance</h3><div class="body"></div></section>
      <div id="banner"></div>
    </div>`;

  await app.init();
  const graphs = new Map<string, MapperPayload>();
  const [matrixPayload, projectionPayload] = await Promise.all([
    client.getDistanceMatrix(),
    client.getProjection(store.get().projectionKind),
  ]);
  await loadGraphs(app, graphs);

  let lastPair = "";

  async function draw(): Promise<void> {
    const state = store.get() as ViewStateSnapshot;
    if (!state.meta || !state.methodPair) return;
    const pairKey = state.methodPair.join("|");
    if (pairKey !== lastPair) {
      await loadGraphs(app, graphs);
      lastPair = pairKey;
    }

    const projModel = projectionView(projectionPayload, state.selection, WIDTH, HEIGHT);
    element(root, "#projection .body").innerHTML =
      `<svg viewBox="0 0 ${WIDTH} ${HEIGHT}" width="${WIDTH}" height="${HEIGHT}">` +
      projModel.dots
        .map(
          (d) =>
            `<circle data-index="${d.index}" cx="${d.x}" cy="${d.y}" r="3" fill="${d.selected ? "#d62728" : "#1f77b4"}" opacity="${state.selection && !d.selected ? 0.25 : 0.9}"/>`,
        )
        .join("") +
      "</svg>";

    state.methodPair.forEach((method, slot) => {
      const payload = graphs.get(method);
      if (!payload) return;
      const positions = forceLayout(payload, WIDTH, HEIGHT);
      const densities = state.selection ? state.selection.densities[method] : null;
      const model = mapperView(payload, positions, densities ?? null);
      const section = element(root, slot === 0 ? "#graph-left" : "#graph-right");
      element(section, "h3").textContent = method;
      element(section, ".body").innerHTML = mapperSvg(model);
    });

    const heat = heatmapView(matrixPayload.methods, matrixPayload.matrix, state.methodPair);
    const cellSize = 42;
    element(root, "#matrix .body").innerHTML =
      `<svg width="${cellSize * (heat.methods.length + 1)}" height="${cellSize * (heat.methods.length + 1)}">` +
      heat.cells
        .map(
          (c) =>
            `<rect data-row="${c.row}" data-col="${c.col}" x="${(c.col + 1) * cellSize}" y="${(c.row + 1) * cellSize}" width="${cellSize - 2}" height="${cellSize - 2}" fill="${colorForScale(c.scale)}" stroke="${c.selected ? "#d62728" : "none"}" stroke-width="3"><title>${escapeHtml(c.rowMethod)} vs ${escapeHtml(c.colMethod)}: ${c.value.toFixed(4)}</title></rect>`,
        )
        .join("") +
      heat.methods
        .map(
          (m, i) =>
            `<text x="${(i + 1) * cellSize + 4}" y="${cellSize - 8}" font-size="10">${escapeHtml(m)}</text>` +
            `<text x="2" y="${(i + 1) * cellSize + 22}" font-size="10">${escapeHtml(m)}</text>`,
        )
        .join("") +
      "</svg>";

    const dataModel = dataTabView(state.meta.columns, state.selection, 180, 60);
    element(root, "#data-tab .body").innerHTML = dataModel.curves.length
      ? dataModel.curves
          .map(
            (c) =>
              `<div class="kde"><span>${escapeHtml(c.column)} (Δ=${c.divergence.toFixed(3)})</span>` +
              `<svg width="180" height="60"><polyline fill="none" stroke="#1f77b4" points="${c.globalPath.map((p) => p.join(",")).join(" ")}"/>` +
              (c.selectionPath
                ? `<polyline fill="none" stroke="#d62728" points="${c.selectionPath.map((p) => p.join(",")).join(" ")}"/>`
                : "") +
              "</svg></div>",
          )
          .join("") +
        "<table><tr><th>column</th><th>global</th><th>selection</th><th>diff</th></tr>" +
        dataModel.rows
          .map(
            (r) =>
              `<tr><td>${escapeHtml(r.column)}</td><td>${r.globalMean.toFixed(4)}</td><td>${r.selectionMean === null ? "—" : r.selectionMean.toFixed(4)}</td><td>${r.difference.toFixed(4)}</td></tr>`,
          )
          .join("") +
        "</table>"
      : "<em>no selection: global view</em>";

    const importancePayload = state.selection
      ? state.selection.importance
      : (await client.getAttributions(state.methodPair)).importance;
    const impModel = importanceView(importancePayload, state.methodPair);
    const barWidth = 80;
    element(root, "#importance .body").innerHTML =
      `<div>${escapeHtml(impModel.leftMethod)} | ${escapeHtml(impModel.rightMethod)}</div>` +
      impModel.bars
        .map((b) => {
          const lw = (Math.abs(b.left) / 5) * barWidth;
          const rw = (Math.abs(b.right) / 5) * barWidth;
          return (
            `<div class="bar-row"><span class="feature">${escapeHtml(b.feature)}</span>` +
            `<svg width="${2 * barWidth + 4}" height="14">` +
            `<rect x="${barWidth - lw}" y="1" width="${lw}" height="5" fill="${b.left >= 0 ? "#2ca02c" : "#d62728"}"/>` +
            `<rect x="${barWidth - rw}" y="8" width="${rw}" height="5" fill="${b.right >= 0 ? "#2ca02c" : "#d62728"}" opacity="0.7"/>` +
            `</svg></div>`
          );
        })
        .join("");

    element(root, "#query-error").textContent = state.queryError
      ? `syntax error at ${state.queryError.position}`
      : "";
    element(root, "#banner").textContent = state.banner ?? "";
  }

  store.subscribe(() => {
    void draw();
  });
  await draw();

  element(root, "#matrix .body").addEventListener("click", (event) => {
    const target = event.target as Element | null;
    const rect = target?.closest("rect[data-row]");
    if (!rect) return;
    app.clickMatrixCell(
      Number(rect.getAttribute("data-row")),
      Number(rect.getAttribute("data-col")),
    );
  });

  const queryBox = element(root, "#query-box") as HTMLInputElement;
  queryBox.addEventListener("keydown", (event) => {
    if ((event as KeyboardEvent).key === "Enter") {
      void app.submitQuery(queryBox.value);
    }
  });

  // rectangular brushes: projection selects raw points, graphs select nodes
  brushRect(element(root, "#projection .body"), (rect, svg) => {
    const chosen: number[] = [];
    svg.querySelectorAll("circle[data-index]").forEach((c) => {
      const x = Number(c.getAttribute("cx"));
      const y = Number(c.getAttribute("cy"));
      if (x >= rect.x0 && x <= rect.x1 && y >= rect.y0 && y <= rect.y1) {
        chosen.push(Number(c.getAttribute("data-index")));
      }
    });
    void app.brushPoints(chosen);
  });

  (["#graph-left", "#graph-right"] as const).forEach((selector, slot) => {
    brushRect(element(root, `${selector} .body`), (rect, svg) => {
      const state = store.get();
      if (!state.methodPair) return;
      const chosen: number[] = [];
      svg.querySelectorAll("circle[data-node]").forEach((c) => {
        const x = Number(c.getAttribute("cx"));
        const y = Number(c.getAttribute("cy"));
        if (x >= rect.x0 && x <= rect.x1 && y >= rect.y0 && y <= rect.y1) {
          chosen.push(Number(c.getAttribute("data-node")));
        }
      });
      void app.brushNodes(state.methodPair[slot], chosen);
    });
  });
}
