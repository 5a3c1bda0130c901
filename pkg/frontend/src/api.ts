/** Typed client for the session service.
 *
 * Selection POSTs are tagged with a monotonically increasing integer so the
 * caller can discard responses that arrive after a newer request was issued
 * (latest wins). GET endpoints are stateless and untagged.
 */

import type {
  AttributionsPayload,
  DistanceMatrixPayload,
  MapperPayload,
  ProjectionPayload,
  SelectionBody,
  SelectionPayload,
  ServiceError,
  SessionMeta,
} from "./types.js";

export type FetchLike = (
  url: string,
  init?: { method?: string; headers?: Record<string, string>; body?: string },
) => Promise<{ ok: boolean; status: number; json(): Promise<unknown> }>;

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly payload: ServiceError,
  ) {
    super(payload.message);
  }
}

export interface TaggedSelection {
  tag: number;
  payload: SelectionPayload;
}

export class ApiClient {
  private nextTag = 1;

  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike,
  ) {}

  private async get<T>(path: string): Promise<T> {
    const response = await this.fetchFn(this.baseUrl + path);
    const body = await response.json();
    if (!response.ok) {
      throw new ApiError(response.status, body as ServiceError);
    }
    return body as T;
  }

  getMeta(): Promise<SessionMeta> {
    return this.get("/api/session/meta");
  }

  getMapper(method: string, color = "pred", agg = "mean"): Promise<MapperPayload> {
    const params = new URLSearchParams({ color, agg });
    return this.get(`/api/mapper/${encodeURIComponent(method)}?${params}`);
  }

  getDistanceMatrix(): Promise<DistanceMatrixPayload> {
    return this.get("/api/distance-matrix");
  }

  getProjection(kind = "pca"): Promise<ProjectionPayload> {
    return this.get(`/api/projection?kind=${encodeURIComponent(kind)}`);
  }

  getAttributions(methods: string[]): Promise<AttributionsPayload> {
    return this.get(`/api/attributions?methods=${methods.map(encodeURIComponent).join(",")}`);
  }

  /** Reserve the next request tag; newer tags supersede older ones. */
  issueTag(): number {
    return this.nextTag++;
  }

  async postSelection(body: SelectionBody, tag: number): Promise<TaggedSelection> {
    const response = await this.fetchFn(this.baseUrl + "/api/selection", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    const payload = await response.json();
    if (!response.ok) {
      throw new ApiError(response.status, payload as ServiceError);
    }
    return { tag, payload: payload as SelectionPayload };
  }
}
