/** Typed client for the screening service's JSON API.
 *
 * Every failure surfaces as an ApiError carrying the service's `error_code`
 * so callers can branch on the taxonomy ("SilentClip", "SessionClosed", ...)
 * instead of matching message text. Transport-level failures (network down,
 * non-JSON body) get the synthetic code "TransportError".
 */

import { apiBase } from "./config.js";
import type { CategoryId } from "./categories.js";

/** Questionnaire schema as the service validates it: field names are part
 * of the wire contract and the age bands are a closed set. */
export const AGE_BANDS = ["0-15", "16-30", "31-45", "46-60", "60+"] as const;

export const SYMPTOM_FIELDS = [
  "cough",
  "cold",
  "fever",
  "diarrhoea",
  "muscle_pain",
  "breathing_difficulty",
  "loss_of_smell",
  "sore_throat",
  "fatigue",
] as const;

export const CONDITION_FIELDS = [
  "respiratory_illness",
  "diabetes",
  "hypertension",
] as const;

export interface SessionMetadata {
  age_band: string;
  gender?: string;
  locale: string;
}

export interface SymptomAnswers {
  cough: boolean;
  cold: boolean;
  fever: boolean;
  diarrhoea: boolean;
  muscle_pain: boolean;
  breathing_difficulty: boolean;
  loss_of_smell: boolean;
  sore_throat: boolean;
  fatigue: boolean;
  respiratory_illness: boolean;
  diabetes: boolean;
  hypertension: boolean;
  age_band: string;
  contact_with_positive: boolean | null;
}

export interface UploadReport {
  category: CategoryId;
  duration_s: number;
  rms: number;
}

export interface ScreenResultView {
  per_source: Record<string, number>;
  fused: number;
  sources_used: string[];
  timestamp: number;
}

export interface SessionView {
  id: string;
  created_at: number;
  state: "collecting" | "scored" | "expired";
  metadata: SessionMetadata | null;
  symptoms: SymptomAnswers | null;
  recordings: Record<string, { duration_s: number; rms: number }>;
  result: ScreenResultView | null;
}

export class ApiError extends Error {
  readonly status: number;
  readonly errorCode: string;

  constructor(status: number, errorCode: string, message: string) {
    super(message);
    this.name = "ApiError";
    this.status = status;
    this.errorCode = errorCode;
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private readonly base: string;
  private readonly fetchImpl: FetchLike;

  constructor(base?: string, fetchImpl?: FetchLike) {
    const resolved = base ?? apiBase();
    this.base = resolved.endsWith("/") ? resolved.slice(0, -1) : resolved;
    // Bind so the client can be handed a bare `fetch` without losing `this`.
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  async createSession(): Promise<string> {
    const body = await this.request("POST", "/api/v1/sessions");
    return (body as { id: string }).id;
  }

  async getSession(sessionId: string): Promise<SessionView> {
    const body = await this.request("GET", `/api/v1/sessions/${sessionId}`);
    return body as SessionView;
  }

  async putMetadata(sessionId: string, metadata: SessionMetadata): Promise<void> {
    await this.request("PUT", `/api/v1/sessions/${sessionId}/metadata`, {
      json: metadata,
    });
  }

  async putSymptoms(sessionId: string, answers: SymptomAnswers): Promise<void> {
    await this.request("PUT", `/api/v1/sessions/${sessionId}/symptoms`, {
      json: answers,
    });
  }

  async uploadAudio(
    sessionId: string,
    category: CategoryId,
    wavBytes: ArrayBuffer,
  ): Promise<UploadReport> {
    const body = await this.request(
      "PUT",
      `/api/v1/sessions/${sessionId}/audio/${category}`,
      { raw: wavBytes },
    );
    return body as UploadReport;
  }

  /** Ask for the fused score.
   *
   * A 409 means the session is no longer accepting the request — but the
   * session may well have been scored already (another tab, a retry racing
   * an earlier attempt). In that case the result is still readable, so fall
   * back to GET and return the stored result if one exists; otherwise the
   * original 409 propagates.
   */
  async score(sessionId: string): Promise<ScreenResultView> {
    try {
      const body = await this.request("POST", `/api/v1/sessions/${sessionId}/score`);
      return body as ScreenResultView;
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        const session = await this.getSession(sessionId);
        if (session.state === "scored" && session.result !== null) {
          return session.result;
        }
      }
      throw err;
    }
  }

  private async request(
    method: string,
    path: string,
    body?: { json?: unknown; raw?: ArrayBuffer },
  ): Promise<unknown> {
    const init: RequestInit = { method };
    if (body?.json !== undefined) {
      init.body = JSON.stringify(body.json);
      init.headers = { "content-type": "application/json" };
    } else if (body?.raw !== undefined) {
      init.body = body.raw;
      init.headers = { "content-type": "application/octet-stream" };
    }

    let response: Response;
    try {
      response = await this.fetchImpl(this.base + path, init);
    } catch (err) {
      throw new ApiError(0, "TransportError", `request failed: ${String(err)}`);
    }

    let payload: unknown = null;
    const text = await response.text();
    if (text !== "") {
      try {
        payload = JSON.parse(text);
      } catch {
        payload = null;
      }
    }

    if (!response.ok) {
      const envelope = payload as { error_code?: string; message?: string } | null;
      throw new ApiError(
        response.status,
        envelope?.error_code ?? "TransportError",
        envelope?.message ?? `HTTP ${response.status}`,
      );
    }
    return payload;
  }
}
