/** Typed client for the mining service HTTP API.
 *
 * The fetch implementation is injected so the client (and everything built
 * on it) can run against a mock in tests and against window.fetch in the
 * browser. Only structural types are used for the response object, keeping
 * the module independent of DOM typings.
 */

export interface ExpandItem {
  text: string;
  occ: number;
}

export interface ExpandResponse {
  query: string;
  results: ExpandItem[];
}

export interface ConcordanceHit {
  unit: number;
  start: number;
  end: number;
  left: string;
  match: string;
  right: string;
  left_truncated: boolean;
  right_truncated: boolean;
}

export interface ConcordanceResponse {
  query: string;
  total: number;
  offset: number;
  hits: ConcordanceHit[];
}

export interface StatsResponse {
  units: number;
  symbols: number;
  fw_count: number;
  phrase_count: number;
  iterations: number;
  rho_trace: number[];
}

export interface ResponseLike {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}

export type FetchLike = (
  url: string,
  init?: { signal?: AbortSignal },
) => Promise<ResponseLike>;

/** Error carrying the HTTP status and the service's detail message. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

function query(params: Record<string, string | number>): string {
  const usp = new URLSearchParams();
  for (const [k, v] of Object.entries(params)) usp.set(k, String(v));
  return usp.toString();
}

async function toError(status: number, body: Promise<unknown>): Promise<ApiError> {
  let message = `service error (HTTP ${status})`;
  try {
    const data = (await body) as { detail?: unknown };
    if (data && typeof data.detail === "string") message = data.detail;
  } catch {
    /* non-JSON error body: keep the generic message */
  }
  return new ApiError(status, message);
}

export class ApiClient {
  constructor(
    private readonly fetchImpl: FetchLike,
    private readonly baseUrl: string = "",
  ) {}

  private async get<T>(path: string, signal?: AbortSignal): Promise<T> {
    const res = await this.fetchImpl(this.baseUrl + path, { signal });
    if (!res.ok) throw await toError(res.status, res.json());
    return (await res.json()) as T;
  }

  expand(q: string, limit: number, signal?: AbortSignal): Promise<ExpandResponse> {
    return this.get(`/api/expand?${query({ q, limit })}`, signal);
  }

  concordance(
    q: string,
    left: number,
    right: number,
    limit: number,
    offset: number,
    signal?: AbortSignal,
  ): Promise<ConcordanceResponse> {
    return this.get(
      `/api/concordance?${query({ q, left, right, limit, offset })}`,
      signal,
    );
  }

  stats(signal?: AbortSignal): Promise<StatsResponse> {
    return this.get("/api/stats", signal);
  }
}
