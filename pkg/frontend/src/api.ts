import type { AnalyzeResponse, AnalyzeRow } from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/** Raised for transport failures, error statuses, and malformed bodies. */
export class ServiceError extends Error {
  status: number;

  constructor(message: string, status: number) {
    super(message);
    this.name = "ServiceError";
    this.status = status;
  }
}

function isRow(value: unknown): value is AnalyzeRow {
  if (typeof value !== "object" || value === null) return false;
  const row = value as Record<string, unknown>;
  return (
    typeof row.numeral === "string" &&
    typeof row.start === "number" &&
    typeof row.end === "number" &&
    (row.label === "in_claim" || row.label === "out_of_claim") &&
    typeof row.probability === "number"
  );
}

function parseResponse(body: unknown): AnalyzeResponse {
  if (typeof body !== "object" || body === null) {
    throw new ServiceError("malformed service response: not an object", 0);
  }
  const doc = body as Record<string, unknown>;
  if (
    !Array.isArray(doc.rows) ||
    !doc.rows.every(isRow) ||
    typeof doc.elapsed_ms !== "number" ||
    typeof doc.model !== "string"
  ) {
    throw new ServiceError("malformed service response: unexpected shape", 0);
  }
  return { rows: doc.rows, elapsed_ms: doc.elapsed_ms, model: doc.model };
}

/** POST the text to {baseUrl}/analyze and return the rows verbatim. */
export async function analyzeText(
  baseUrl: string,
  text: string,
  fetchImpl: FetchLike = fetch
): Promise<AnalyzeResponse> {
  let response: Response;
  try {
    response = await fetchImpl(`${baseUrl}/analyze`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ text }),
    });
  } catch (err) {
    const detail = err instanceof Error ? err.message : String(err);
    throw new ServiceError(`service unreachable: ${detail}`, 0);
  }
  if (!response.ok) {
    const body = (await response.json().catch(() => ({}))) as Record<string, unknown>;
    const message =
      typeof body.error === "string" ? body.error : response.statusText;
    throw new ServiceError(message, response.status);
  }
  let body: unknown;
  try {
    body = await response.json();
  } catch {
    throw new ServiceError("malformed service response: not JSON", 0);
  }
  return parseResponse(body);
}

export interface HealthResponse {
  status: string;
  model: string;
}

export async function fetchHealth(
  baseUrl: string,
  fetchImpl: FetchLike = fetch
): Promise<HealthResponse> {
  let response: Response;
  try {
    response = await fetchImpl(`${baseUrl}/health`);
  } catch (err) {
    const detail = err instanceof Error ? err.message : String(err);
    throw new ServiceError(`service unreachable: ${detail}`, 0);
  }
  if (!response.ok) {
    throw new ServiceError(`health check failed: ${response.status}`, response.status);
  }
  return (await response.json()) as HealthResponse;
}
