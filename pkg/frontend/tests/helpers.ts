/** An in-memory stand-in for the screening service, speaking the same
 * routes and JSON envelopes, so client logic can be exercised without a
 * network. Per-test failure plans let individual uploads be rejected with
 * a chosen error code.
 */

import type { ScreenResultView } from "../src/api.js";
import { CATEGORIES } from "../src/categories.js";

export interface FakeSession {
  id: string;
  metadata: unknown;
  symptoms: unknown;
  recordings: Map<string, { duration_s: number; rms: number }>;
  result: ScreenResultView | null;
}

export interface FakeService {
  fetchImpl: (input: string, init?: RequestInit) => Promise<Response>;
  sessions: Map<string, FakeSession>;
  requests: { method: string; path: string }[];
  /** Return an error envelope to reject an upload, or null to accept. */
  uploadGate: (category: string) => { status: number; error_code: string } | null;
  /** Resolved before an upload is processed; swap in a pending promise to
   * hold uploads open. */
  uploadBarrier: () => Promise<void>;
}

const CATEGORY_IDS = new Set<string>(CATEGORIES.map((c) => c.id));

export function makeFakeService(): FakeService {
  const sessions = new Map<string, FakeSession>();
  let counter = 0;

  const service: FakeService = {
    sessions,
    requests: [],
    uploadGate: () => null,
    uploadBarrier: () => Promise.resolve(),
    fetchImpl: async (input, init) => {
      const method = init?.method ?? "GET";
      const path = new URL(input, "http://fake").pathname;
      service.requests.push({ method, path });

      if (method === "POST" && path === "/api/v1/sessions") {
        counter += 1;
        const id = `fake-${counter}`;
        sessions.set(id, {
          id,
          metadata: null,
          symptoms: null,
          recordings: new Map(),
          result: null,
        });
        return json(200, { id });
      }

      const match = path.match(/^\/api\/v1\/sessions\/([^/]+)(?:\/(.*))?$/);
      if (match === null) {
        return json(404, { error_code: "TransportError", message: "no route" });
      }
      const session = sessions.get(match[1]);
      if (session === undefined) {
        return json(404, { error_code: "UnknownSession", message: "no such session" });
      }
      const tail = match[2] ?? "";

      if (method === "GET" && tail === "") {
        return json(200, sessionView(session));
      }
      if (method === "PUT" && tail === "metadata") {
        session.metadata = JSON.parse(String(init?.body));
        return json(200, { ok: true });
      }
      if (method === "PUT" && tail === "symptoms") {
        session.symptoms = JSON.parse(String(init?.body));
        return json(200, { ok: true });
      }
      if (method === "PUT" && tail.startsWith("audio/")) {
        const category = tail.slice("audio/".length);
        if (!CATEGORY_IDS.has(category)) {
          return json(400, { error_code: "UnknownCategory", message: category });
        }
        await service.uploadBarrier();
        const rejection = service.uploadGate(category);
        if (rejection !== null) {
          return json(rejection.status, {
            error_code: rejection.error_code,
            message: "rejected by test plan",
          });
        }
        const report = {
          category,
          duration_s: wavDuration(init?.body as ArrayBuffer),
          rms: 0.5,
        };
        session.recordings.set(category, { duration_s: report.duration_s, rms: 0.5 });
        return json(200, report);
      }
      if (method === "POST" && tail === "score") {
        if (session.result !== null) {
          return json(200, session.result);
        }
        if (session.recordings.size === 0 && session.symptoms === null) {
          return json(400, { error_code: "NothingToScore", message: "nothing to score" });
        }
        session.result = fakeResult(session);
        return json(200, session.result);
      }
      return json(400, { error_code: "SchemaViolation", message: "unhandled" });
    },
  };
  return service;
}

/** Deterministic stand-in scores: 0.7 per clip, 0.4 for the questionnaire,
 * fused by plain mean — close enough in shape to exercise every consumer. */
function fakeResult(session: FakeSession): ScreenResultView {
  const perSource: Record<string, number> = {};
  const sources: string[] = [];
  for (const info of CATEGORIES) {
    if (session.recordings.has(info.id)) {
      perSource[info.id] = 0.7;
      sources.push(info.id);
    }
  }
  if (session.symptoms !== null) {
    perSource["symptoms"] = 0.4;
    sources.push("symptoms");
  }
  const values = sources.map((s) => perSource[s]);
  const fused = values.reduce((a, b) => a + b, 0) / values.length;
  return { per_source: perSource, fused, sources_used: sources, timestamp: 1.0 };
}

function sessionView(session: FakeSession): Record<string, unknown> {
  return {
    id: session.id,
    created_at: 0,
    state: session.result === null ? "collecting" : "scored",
    metadata: session.metadata,
    symptoms: session.symptoms,
    recordings: Object.fromEntries(session.recordings),
    result: session.result,
  };
}

function wavDuration(body: ArrayBuffer): number {
  const view = new DataView(body);
  const rate = view.getUint32(24, true);
  const dataBytes = view.getUint32(40, true);
  return dataBytes / 2 / rate;
}

function json(status: number, body: unknown): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

/** A recorder whose capture is scripted: no microphone involved. */
export function makeStubRecorder(samples: Float32Array, sampleRate: number) {
  return {
    start: async () => {},
    stop: async () => ({ samples, sampleRate }),
  };
}

export function sine(freqHz: number, durationS: number, rate = 16000, amp = 0.5): Float32Array {
  const n = Math.round(durationS * rate);
  const out = new Float32Array(n);
  for (let i = 0; i < n; i++) {
    out[i] = amp * Math.sin((2 * Math.PI * freqHz * i) / rate);
  }
  return out;
}

export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
