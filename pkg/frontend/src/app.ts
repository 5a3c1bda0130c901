/** Interaction controller: binds the API client to the store.
 *
 * Implements the interaction loops — matrix cell click, node/point brushing,
 * query submission — with exclusive selections and latest-wins request
 * handling. Stale responses are discarded by the reducer via request tags.
 */

import { ApiClient, ApiError } from "./api.js";
import { Store } from "./state.js";
import type { SelectionBody } from "./types.js";

/** Parse "... (position N, expected ...)" out of a query-syntax message. */
export function errorPosition(message: string): number {
  const match = /position (\d+)/.exec(message);
  return match ? Number(match[1]) : 0;
}

export class App {
  constructor(
    readonly client: ApiClient,
    readonly store: Store,
  ) {}

  async init(): Promise<void> {
    const meta = await this.client.getMeta();
    this.store.dispatch({ kind: "session-loaded", meta });
  }

  clickMatrixCell(row: number, col: number): void {
    this.store.dispatch({ kind: "matrix-cell-clicked", row, col });
  }

  /** Brush nodes in one mapper view; an empty brush clears the selection. */
  async brushNodes(graph: string, nodeIds: number[]): Promise<void> {
    if (nodeIds.length === 0) {
      this.store.dispatch({ kind: "selection-cleared" });
      return;
    }
    await this.submitSelection({ type: "nodes", graph, nodeIds });
  }

  /** Brush points in the projection view (already hit-tested to indices). */
  async brushPoints(indices: number[]): Promise<void> {
    if (indices.length === 0) {
      this.store.dispatch({ kind: "selection-cleared" });
      return;
    }
    await this.submitSelection({ type: "points", indices });
  }

  /** Submit the query box; an empty string clears the selection. */
  async submitQuery(text: string): Promise<void> {
    this.store.dispatch({ kind: "query-edited", text });
    if (text.trim() === "") {
      this.store.dispatch({ kind: "selection-cleared" });
      return;
    }
    await this.submitSelection({ type: "query", where: text });
  }

  private async submitSelection(body: SelectionBody): Promise<void> {
    const tag = this.client.issueTag();
    this.store.dispatch({ kind: "selection-requested", tag });
    try {
      const { payload } = await this.client.postSelection(body, tag);
      this.store.dispatch({ kind: "selection-resolved", tag, payload });
    } catch (error) {
      if (error instanceof ApiError && error.payload.code === "query-syntax") {
        this.store.dispatch({
          kind: "query-rejected",
          tag,
          position: errorPosition(error.payload.message),
          message: error.payload.message,
        });
        return;
      }
      const message = error instanceof Error ? error.message : String(error);
      this.store.dispatch({ kind: "selection-failed", tag, message });
    }
  }
}
