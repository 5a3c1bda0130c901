/** Deterministic force-directed layout.
 *
 * Seeded per graph (hash of the method name) so layouts are stable across
 * reloads. Plain spring + repulsion + centering iterations; no external
 * dependency. Layout is presentation geometry only — every number shown in
 * the views still comes from the service.
 */

import type { MapperPayload } from "./types.js";

export interface NodePosition {
  id: number;
  x: number;
  y: number;
}

/** mulberry32: tiny deterministic PRNG, plenty for layout jitter. */
export function seededRandom(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function hashString(text: string): number {
  let h = 2166136261 >>> 0;
  for (let i = 0; i < text.length; i++) {
    h = Math.imul(h ^ text.charCodeAt(i), 16777619) >>> 0;
  }
  return h;
}

export function forceLayout(
  graph: MapperPayload,
  width: number,
  height: number,
  iterations = 150,
): NodePosition[] {
  const rand = seededRandom(hashString(graph.method));
  const n = graph.nodes.length;
  if (n === 0) return [];
  const xs = new Float64Array(n);
  const ys = new Float64Array(n);
  const indexById = new Map<number, number>();
  graph.nodes.forEach((node, i) => {
    indexById.set(node.id, i);
    // start on a circle, jittered, so symmetric graphs do not collapse
    const angle = (2 * Math.PI * i) / n + rand() * 0.1;
    xs[i] = 0.35 * width * Math.cos(angle) + (rand() - 0.5) * 10;
    ys[i] = 0.35 * height * Math.sin(angle) + (rand() - 0.5) * 10;
  });

  const springLength = Math.min(width, height) / Math.max(2, Math.sqrt(n) * 1.5);
  const edges = graph.edges.map(([a, b]) => [indexById.get(a)!, indexById.get(b)!]);

  for (let iter = 0; iter < iterations; iter++) {
    const cooling = 1 - iter / iterations;
    const fx = new Float64Array(n);
    const fy = new Float64Array(n);

    for (let i = 0; i < n; i++) {
      for (let j = i + 1; j < n; j++) {
        const dx = xs[i] - xs[j];
        const dy = ys[i] - ys[j];
        const d2 = dx * dx + dy * dy + 1e-6;
        const repulsion = (springLength * springLength) / d2;
        const d = Math.sqrt(d2);
        fx[i] += (dx / d) * repulsion * springLength;
        fy[i] += (dy / d) * repulsion * springLength;
        fx[j] -= (dx / d) * repulsion * springLength;
        fy[j] -= (dy / d) * repulsion * springLength;
      }
    }
    for (const [a, b] of edges) {
      const dx = xs[a] - xs[b];
      const dy = ys[a] - ys[b];
      const d = Math.sqrt(dx * dx + dy * dy) + 1e-6;
      const pull = (d - springLength) / d;
      fx[a] -= dx * pull * 0.5;
      fy[a] -= dy * pull * 0.5;
      fx[b] += dx * pull * 0.5;
      fy[b] += dy * pull * 0.5;
    }
    for (let i = 0; i < n; i++) {
      // centering plus capped displacement, annealed over iterations
      fx[i] -= xs[i] * 0.02;
      fy[i] -= ys[i] * 0.02;
      const limit = 12 * cooling + 0.5;
      xs[i] += Math.max(-limit, Math.min(limit, fx[i]));
      ys[i] += Math.max(-limit, Math.min(limit, fy[i]));
    }
  }

  // normalize into the viewport with a margin
  let minX = Infinity;
  let maxX = -Infinity;
  let minY = Infinity;
  let maxY = -Infinity;
  for (let i = 0; i < n; i++) {
    minX = Math.min(minX, xs[i]);
    maxX = Math.max(maxX, xs[i]);
    minY = Math.min(minY, ys[i]);
    maxY = Math.max(maxY, ys[i]);
  }
  const margin = 30;
  const spanX = maxX - minX || 1;
  const spanY = maxY - minY || 1;
  return graph.nodes.map((node, i) => ({
    id: node.id,
    x: margin + ((xs[i] - minX) / spanX) * (width - 2 * margin),
    y: margin + ((ys[i] - minY) / spanY) * (height - 2 * margin),
  }));
}
