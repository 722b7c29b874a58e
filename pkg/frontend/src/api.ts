/** Thin client for the recognizer's /api endpoints.
 *
 * Classification keeps at most one request in flight: a newer stroke
 * aborts the previous request so stale results never overwrite fresh
 * ink.
 */

import type { ClassifyResponse, ModelInfo, Point } from "./types.js";

export class ApiError extends Error {
  status: number;

  constructor(status: number, message: string) {
    super(message);
    this.status = status;
  }
}

async function readError(response: Response): Promise<ApiError> {
  let message = `request failed (${response.status})`;
  try {
    const body = (await response.json()) as { error?: string };
    if (body.error) message = body.error;
  } catch {
    // non-JSON error body; keep the status message
  }
  return new ApiError(response.status, message);
}

export class RecognizerClient {
  private baseUrl: string;
  private inflight: AbortController | null = null;

  constructor(baseUrl = "") {
    this.baseUrl = baseUrl.replace(/\/$/, "");
  }

  /** Math-convention points in, ranked candidates out. */
  async classify(points: Point[], alpha = 5): Promise<ClassifyResponse> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    try {
      const response = await fetch(`${this.baseUrl}/api/classify`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ points, alpha }),
        signal: controller.signal,
      });
      if (!response.ok) throw await readError(response);
      return (await response.json()) as ClassifyResponse;
    } finally {
      if (this.inflight === controller) this.inflight = null;
    }
  }

  async getModel(): Promise<ModelInfo> {
    const response = await fetch(`${this.baseUrl}/api/model`);
    if (!response.ok) throw await readError(response);
    return (await response.json()) as ModelInfo;
  }

  async saveStroke(label: string, points: Point[], writerId?: string): Promise<void> {
    const body: Record<string, unknown> = { label, points };
    if (writerId) body.writer_id = writerId;
    const response = await fetch(`${this.baseUrl}/api/strokes`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!response.ok) throw await readError(response);
  }
}
