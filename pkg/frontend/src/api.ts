/** Typed client for the fairplay JSON API. */

import type {
  ApiError,
  CompareResponse,
  ImputeResponse,
  SensitivityResponse,
  TournamentDoc,
} from "./types.js";

export class ApiRequestError extends Error {
  readonly status: number;
  readonly path?: string;

  constructor(status: number, body: ApiError) {
    super(body.error || `request failed with ${status}`);
    this.status = status;
    this.path = body.path;
  }
}

async function postJson<T>(url: string, payload: unknown): Promise<T> {
  const response = await fetch(url, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(payload),
  });
  if (!response.ok) {
    let body: ApiError = { error: `request failed with ${response.status}` };
    try {
      body = (await response.json()) as ApiError;
    } catch {
      // non-JSON error body: keep the status message
    }
    throw new ApiRequestError(response.status, body);
  }
  return (await response.json()) as T;
}

export class ApiClient {
  constructor(readonly baseUrl: string = "") {}

  async health(): Promise<boolean> {
    try {
      const response = await fetch(`${this.baseUrl}/api/health`);
      return response.ok && (await response.text()) === "ok";
    } catch {
      return false;
    }
  }

  impute(
    doc: TournamentDoc,
    options: { method?: string; level?: number } = {},
  ): Promise<ImputeResponse> {
    return postJson(`${this.baseUrl}/api/impute`, { ...doc, ...options });
  }

  sensitivity(doc: TournamentDoc, kValues: number[]): Promise<SensitivityResponse> {
    return postJson(`${this.baseUrl}/api/sensitivity`, {
      tournament: doc,
      kValues,
    });
  }

  compare(doc: TournamentDoc, k?: number): Promise<CompareResponse> {
    return postJson(`${this.baseUrl}/api/compare`, {
      tournament: doc,
      ...(k !== undefined ? { k } : {}),
    });
  }
}
