/** Thin client for the compute API. */
import type {
  PosteriorRequestBody,
  PosteriorResponse,
  PriorPreview,
  ScenarioSummary,
} from "./types";

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status?: number,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

interface ValidationPayload {
  error?: string;
  fields?: { field: string; message: string }[];
  message?: string;
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let resp: Response;
    try {
      resp = await this.fetchFn(this.baseUrl + path, init);
    } catch (err) {
      if (err instanceof DOMException && err.name === "AbortError") throw err;
      throw new ApiError(`service unreachable: ${(err as Error).message}`);
    }
    if (!resp.ok) {
      let detail = `HTTP ${resp.status}`;
      try {
        const payload = (await resp.json()) as ValidationPayload;
        if (payload.fields?.length) {
          detail = payload.fields.map((f) => `${f.field}: ${f.message}`).join("; ");
        } else if (payload.message) {
          detail = payload.message;
        }
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(detail, resp.status);
    }
    return (await resp.json()) as T;
  }

  computePosterior(body: PosteriorRequestBody, signal?: AbortSignal): Promise<PosteriorResponse> {
    return this.request<PosteriorResponse>("/v1/posterior", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
      signal,
    });
  }

  priorPreview(a: number, b: number, signal?: AbortSignal): Promise<PriorPreview> {
    const q = new URLSearchParams({ a: String(a), b: String(b) });
    return this.request<PriorPreview>(`/v1/prior-preview?${q}`, { signal });
  }

  async scenarios(): Promise<ScenarioSummary[]> {
    const doc = await this.request<{ scenarios: ScenarioSummary[] }>("/v1/scenarios");
    return doc.scenarios;
  }

  async health(): Promise<boolean> {
    try {
      const resp = await this.fetchFn(this.baseUrl + "/healthz");
      return resp.ok;
    } catch {
      return false;
    }
  }
}
