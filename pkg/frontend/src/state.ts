/** View state and its reducer.
 *
 * Invariants: the method pair always holds valid method names; at most one
 * selection is active (brushing is exclusive — a new brush replaces the
 * previous one); a selection response is applied only if its tag matches the
 * most recent request, so stale responses can never overwrite newer state.
 */

import type { SelectionPayload, SessionMeta } from "./types.js";

export interface QueryError {
  position: number;
  message: string;
}

export interface ViewState {
  meta: SessionMeta | null;
  /** Methods shown in the two mapper views and the attribution view. */
  methodPair: [string, string] | null;
  colorAttribute: string;
  colorAgg: string;
  projectionKind: string;
  queryText: string;
  queryError: QueryError | null;
  /** Analytics of the active selection; null renders the global view. */
  selection: SelectionPayload | null;
  /** Tag of the most recent selection request (0 = none issued). */
  pendingTag: number;
  /** Tag whose response is currently applied (0 = none). */
  appliedTag: number;
  banner: string | null;
}

export const initialState: ViewState = {
  meta: null,
  methodPair: null,
  colorAttribute: "pred",
  colorAgg: "mean",
  projectionKind: "pca",
  queryText: "",
  queryError: null,
  selection: null,
  pendingTag: 0,
  appliedTag: 0,
  banner: null,
};

export type Action =
  | { kind: "session-loaded"; meta: SessionMeta }
  | { kind: "matrix-cell-clicked"; row: number; col: number }
  | { kind: "color-changed"; attribute: string; agg: string }
  | { kind: "projection-changed"; projectionKind: string }
  | { kind: "query-edited"; text: string }
  | { kind: "selection-requested"; tag: number }
  | { kind: "selection-resolved"; tag: number; payload: SelectionPayload }
  | { kind: "selection-failed"; tag: number; message: string }
  | { kind: "query-rejected"; tag: number; position: number; message: string }
  | { kind: "selection-cleared" };

export function reduce(state: ViewState, action: Action): ViewState {
  switch (action.kind) {
    case "session-loaded": {
      const names = action.meta.methodNames;
      // matrix cell (0, 1) is preselected on load
      const pair: [string, string] =
        names.length > 1 ? [names[0], names[1]] : [names[0], names[0]];
      return { ...state, meta: action.meta, methodPair: pair, banner: null };
    }
    case "matrix-cell-clicked": {
      if (!state.meta) return state;
      const names = state.meta.methodNames;
      if (
        action.row < 0 ||
        action.col < 0 ||
        action.row >= names.length ||
        action.col >= names.length
      ) {
        return state;
      }
      return { ...state, methodPair: [names[action.row], names[action.col]] };
    }
    case "color-changed":
      return { ...state, colorAttribute: action.attribute, colorAgg: action.agg };
    case "projection-changed":
      return { ...state, projectionKind: action.projectionKind };
    case "query-edited":
      return { ...state, queryText: action.text };
    case "selection-requested":
      return { ...state, pendingTag: Math.max(state.pendingTag, action.tag) };
    case "selection-resolved": {
      if (action.tag !== state.pendingTag) return state; // stale: discard
      return {
        ...state,
        selection: action.payload,
        appliedTag: action.tag,
        queryError: null,
        banner: null,
      };
    }
    case "selection-failed": {
      // previous state is retained; only surface a banner for the latest request
      if (action.tag !== state.pendingTag) return state;
      return { ...state, banner: action.message };
    }
    case "query-rejected": {
      if (action.tag !== state.pendingTag) return state;
      // inline error, views keep rendering the prior selection
      return {
        ...state,
        queryError: { position: action.position, message: action.message },
      };
    }
    case "selection-cleared":
      // bump the pending tag so any in-flight response lands stale
      return {
        ...state,
        selection: null,
        appliedTag: 0,
        pendingTag: state.pendingTag + 1,
        queryError: null,
      };
  }
}

export class Store {
  private state: ViewState;
  private listeners: Array<(s: ViewState) => void> = [];

  constructor(start: ViewState = initialState) {
    this.state = start;
  }

  get(): ViewState {
    return this.state;
  }

  dispatch(action: Action): ViewState {
    this.state = reduce(this.state, action);
    for (const listener of this.listeners) listener(this.state);
    return this.state;
  }

  subscribe(listener: (s: ViewState) => void): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }
}
