/** Small DOM helpers kept out of main.ts so the bootstrap reads linearly. */

import type { ViewState } from "./state.js";
import type { MapperPayload } from "./types.js";

export type { MapperPayload };
/** Alias used by main.ts when narrowing the store snapshot. */
export type ViewStateSnapshot = ViewState;

export function element(scope: ParentNode, selector: string): HTMLElement {
  const found = scope.querySelector(selector);
  if (!found) throw new Error(`missing element ${selector}`);
  return found as HTMLElement;
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Blue→orange ramp for the distance heatmap (perceptually ordered). */
export function colorForScale(scale: number): string {
  const t = Math.max(0, Math.min(1, scale));
  const r = Math.round(42 + t * (255 - 42));
  const g = Math.round(110 + t * (140 - 110));
  const b = Math.round(180 - t * 180);
  return `rgb(${r},${g},${b})`;
}

/** Node fill: density ramp when a selection is active, lens color otherwise. */
export function colorForDensity(density: number | null, colorValue: number): string {
  if (density === null) {
    const t = Math.max(0, Math.min(1, colorValue));
    const shade = Math.round(230 - t * 170);
    return `rgb(${shade},${shade},255)`;
  }
  const t = Math.max(0, Math.min(1, density));
  const g = Math.round(230 - t * 180);
  return `rgb(255,${g},${Math.round(80 * (1 - t))})`;
}

export interface BrushBounds {
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}

/** Wire a drag-rectangle brush on a container holding one SVG. */
export function brushRect(
  container: HTMLElement,
  onBrush: (rect: BrushBounds, svg: SVGSVGElement) => void,
): void {
  let start: [number, number] | null = null;
  container.addEventListener("pointerdown", (event) => {
    const e = event as PointerEvent;
    start = [e.offsetX, e.offsetY];
  });
  container.addEventListener("pointerup", (event) => {
    if (!start) return;
    const e = event as PointerEvent;
    const svg = container.querySelector("svg");
    if (svg) {
      onBrush(
        {
          x0: Math.min(start[0], e.offsetX),
          y0: Math.min(start[1], e.offsetY),
          x1: Math.max(start[0], e.offsetX),
          y1: Math.max(start[1], e.offsetY),
        },
        svg as SVGSVGElement,
      );
    }
    start = null;
  });
}
