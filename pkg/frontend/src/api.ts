import type {
  ApiErrorBody,
  DocumentPayload,
  LatticePayload,
  Mode,
  SearchPayload,
} from "./types.js";

export class ApiError extends Error {
  readonly code: string;
  readonly details: Record<string, unknown>;

  constructor(code: string, message: string, details: Record<string, unknown> = {}) {
    super(message);
    this.code = code;
    this.details = details;
  }
}

async function request<T>(base: string, path: string, init?: RequestInit): Promise<T> {
  let response: Response;
  try {
    response = await fetch(base + path, init);
  } catch (err) {
    throw new ApiError("unreachable", `service unreachable: ${String(err)}`);
  }
  const body = (await response.json().catch(() => null)) as T | ApiErrorBody | null;
  if (!response.ok) {
    const error = (body as ApiErrorBody | null)?.error;
    throw new ApiError(
      error?.code ?? `http_${response.status}`,
      error?.message ?? `request failed with status ${response.status}`,
      error?.details ?? {},
    );
  }
  return body as T;
}

export class ApiClient {
  constructor(readonly base: string = "") {}

  lattice(): Promise<LatticePayload> {
    return request(this.base, "/api/lattice");
  }

  search(terms: string[], mode: Mode): Promise<SearchPayload> {
    return request(this.base, "/api/search", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ terms, mode }),
    });
  }

  document(id: string): Promise<DocumentPayload> {
    return request(this.base, `/api/documents/${encodeURIComponent(id)}`);
  }
}
