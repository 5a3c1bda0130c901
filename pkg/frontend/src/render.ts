/** Pure view-model builders for the five coordinated views.
 *
 * Every function maps service payloads (plus layout geometry) to plain data
 * that the DOM layer draws verbatim. No analytics are recomputed here; the
 * client is a presenter over API responses.
 */

import type { NodePosition } from "./layout.js";
import type {
  ImportancePayload,
  MapperPayload,
  ProjectionPayload,
  SelectionPayload,
} from "./types.js";

export interface ProjectionDot {
  index: number;
  x: number;
  y: number;
  selected: boolean;
}

export interface ProjectionViewModel {
  kind: string;
  dots: ProjectionDot[];
}

export function projectionView(
  payload: ProjectionPayload,
  selection: SelectionPayload | null,
  width: number,
  height: number,
): ProjectionViewModel {
  const xs = payload.points.map((p) => p[0]);
  const ys = payload.points.map((p) => p[1]);
  const minX = Math.min(...xs);
  const maxX = Math.max(...xs);
  const minY = Math.min(...ys);
  const maxY = Math.max(...ys);
  const spanX = maxX - minX || 1;
  const spanY = maxY - minY || 1;
  const margin = 20;
  const chosen = new Set(selection?.indices ?? []);
  return {
    kind: payload.kind,
    dots: payload.points.map(([px, py], index) => ({
      index,
      x: margin + ((px - minX) / spanX) * (width - 2 * margin),
      y: margin + ((py - minY) / spanY) * (height - 2 * margin),
      selected: chosen.has(index),
    })),
  };
}

export interface MapperNodeViewModel {
  id: number;
  x: number;
  y: number;
  radius: number;
  size: number;
  colorValue: number;
  /** Fraction of the node's members inside the selection; null when none. */
  density: number | null;
}

export interface MapperEdgeViewModel {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  shared: number;
}

export interface MapperViewModel {
  method: string;
  nodes: MapperNodeViewModel[];
  edges: MapperEdgeViewModel[];
}

const MIN_RADIUS = 4;
const MAX_RADIUS = 22;

export function mapperView(
  payload: MapperPayload,
  positions: NodePosition[],
  densities: number[] | null,
): MapperViewModel {
  const positionById = new Map(positions.map((p) => [p.id, p]));
  const maxSize = Math.max(1, ...payload.nodes.map((n) => n.size));
  const nodes = payload.nodes.map((node, i) => {
    const pos = positionById.get(node.id)!;
    return {
      id: node.id,
      x: pos.x,
      y: pos.y,
      // area scales with member count, clamped to a legible range
      radius: MIN_RADIUS + (MAX_RADIUS - MIN_RADIUS) * Math.sqrt(node.size / maxSize),
      size: node.size,
      colorValue: payload.color.values[i],
      density: densities ? densities[i] : null,
    };
  });
  const nodeById = new Map(nodes.map((n) => [n.id, n]));
  const edges = payload.edges.map(([a, b, shared]) => {
    const na = nodeById.get(a)!;
    const nb = nodeById.get(b)!;
    return { x1: na.x, y1: na.y, x2: nb.x, y2: nb.y, shared };
  });
  return { method: payload.method, nodes, edges };
}

export interface HeatmapCell {
  row: number;
  col: number;
  rowMethod: string;
  colMethod: string;
  value: number;
  /** 0..1 position on the color scale (0 = min distance, 1 = max). */
  scale: number;
  selected: boolean;
}

export interface HeatmapViewModel {
  methods: string[];
  cells: HeatmapCell[];
}

export function heatmapView(
  methods: string[],
  matrix: number[][],
  selectedPair: [string, string] | null,
): HeatmapViewModel {
  let max = 0;
  for (const row of matrix) for (const v of row) max = Math.max(max, v);
  const cells: HeatmapCell[] = [];
  methods.forEach((rowMethod, row) => {
    methods.forEach((colMethod, col) => {
      cells.push({
        row,
        col,
        rowMethod,
        colMethod,
        value: matrix[row][col],
        scale: max > 0 ? matrix[row][col] / max : 0,
        selected:
          selectedPair !== null &&
          selectedPair[0] === rowMethod &&
          selectedPair[1] === colMethod,
      });
    });
  });
  return { methods, cells };
}

export interface KdeCurveViewModel {
  column: string;
  divergence: number;
  /** Polyline points on a shared grid; y already flipped for drawing. */
  globalPath: [number, number][];
  selectionPath: [number, number][] | null;
}

export interface DataTabViewModel {
  /** KDE small multiples in descending divergence order. */
  curves: KdeCurveViewModel[];
  rows: {
    column: string;
    globalMean: number;
    selectionMean: number | null;
    difference: number;
  }[];
}

function toPath(
  grid: number[],
  density: number[],
  peak: number,
  width: number,
  height: number,
): [number, number][] {
  const minX = grid[0];
  const spanX = grid[grid.length - 1] - minX || 1;
  return grid.map((g, i) => [
    ((g - minX) / spanX) * width,
    height - (peak > 0 ? (density[i] / peak) * height : 0),
  ]);
}

export function dataTabView(
  columns: string[],
  selection: SelectionPayload | null,
  width: number,
  height: number,
): DataTabViewModel {
  if (!selection) return { curves: [], rows: [] };
  const order = selection.kdeOrder;
  const curves = order.map((column) => {
    const kde = selection.kde[column];
    const peak = Math.max(...kde.global, ...(kde.selection ?? [0]));
    return {
      column,
      divergence: kde.divergence,
      globalPath: toPath(kde.grid, kde.global, peak, width, height),
      selectionPath: kde.selection
        ? toPath(kde.grid, kde.selection, peak, width, height)
        : null,
    };
  });
  const averages = selection.tableAverages;
  const rows = columns.map((column, i) => ({
    column,
    globalMean: averages.globalMean[i],
    selectionMean: averages.selectionMean ? averages.selectionMean[i] : null,
    difference: averages.difference[i],
  }));
  return { curves, rows };
}

export interface ImportanceBar {
  feature: string;
  featureIndex: number;
  /** Signed level per selected method, in [-5, 5]. */
  left: number;
  right: number;
}

export interface ImportanceViewModel {
  leftMethod: string;
  rightMethod: string;
  bars: ImportanceBar[];
}

export function importanceView(
  payload: ImportancePayload,
  pair: [string, string],
): ImportanceViewModel {
  const [leftMethod, rightMethod] = pair;
  const left = payload.levels[leftMethod] ?? payload.features.map(() => 0);
  const right = payload.levels[rightMethod] ?? payload.features.map(() => 0);
  // payload.order already sorts features by combined |level| descending
  const bars = payload.order.map((featureIndex) => ({
    feature: payload.features[featureIndex],
    featureIndex,
    left: left[featureIndex],
    right: right[featureIndex],
  }));
  return { leftMethod, rightMethod, bars };
}
