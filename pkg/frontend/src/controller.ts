/** Orchestration between the store, the API client, and the recorder.
 *
 * The controller owns every async edge: session creation is lazy (first
 * submit or upload creates it), uploads run in the background while the
 * user moves on to the next sound, and scoring waits for the upload queue
 * to drain so the result always matches what the review screen promised.
 */

import { ApiClient, ApiError } from "./api.js";
import type { SessionMetadata, SymptomAnswers } from "./api.js";
import { categoryAt } from "./categories.js";
import type { CategoryId } from "./categories.js";
import { Recorder, RecorderError } from "./recorder.js";
import type { RecorderLike } from "./recorder.js";
import { encodeWavPcm16 } from "./wav.js";
import {
  backStep,
  canScore,
  nextStep,
  withCategoryStatus,
  withStep,
} from "./state.js";
import type { Store, WizardState } from "./state.js";
import { t } from "./strings.js";

/** Service error codes mapped onto the short reason keys the UI renders. */
const UPLOAD_FAIL_REASONS: Record<string, string> = {
  SilentClip: "silent",
  TooShortOrLong: "too_short_or_long",
  PayloadTooLarge: "too_large",
};

export class WizardController {
  private readonly store: Store;
  private readonly api: ApiClient;
  private readonly makeRecorder: () => RecorderLike;
  private recorder: RecorderLike | null = null;

  constructor(store: Store, api: ApiClient, makeRecorder?: () => RecorderLike) {
    this.store = store;
    this.api = api;
    this.makeRecorder = makeRecorder ?? (() => new Recorder());
  }

  // -- navigation --------------------------------------------------------------

  goNext(): void {
    this.store.update((state) => {
      const step = nextStep(state);
      return step === null ? state : withStep(state, step);
    });
  }

  goBack(): void {
    this.store.update((state) => {
      const step = backStep(state.step);
      return step === null ? state : withStep(state, step);
    });
  }

  // -- profile and questionnaire -------------------------------------------------

  async submitMetadata(metadata: SessionMetadata): Promise<void> {
    await this.submitStep(async (sessionId) => {
      await this.api.putMetadata(sessionId, metadata);
      this.store.update((state) => ({ ...state, metadata }));
    });
  }

  async submitSymptoms(answers: SymptomAnswers): Promise<void> {
    await this.submitStep(async (sessionId) => {
      await this.api.putSymptoms(sessionId, answers);
      this.store.update((state) => ({ ...state, symptoms: answers }));
    });
  }

  /** Shared shape of the two form submissions: create the session if
   * needed, send, then advance; on failure stay put and show the error. */
  private async submitStep(send: (sessionId: string) => Promise<void>): Promise<void> {
    this.store.update((state) => ({ ...state, busy: true, error: null }));
    try {
      const sessionId = await this.ensureSession();
      await send(sessionId);
      this.store.update((state) => {
        const step = nextStep(state);
        const advanced = step === null ? state : withStep(state, step);
        return { ...advanced, busy: false };
      });
    } catch (err) {
      this.failStep(err);
    }
  }

  skipStep(): void {
    this.goNext();
  }

  // -- recording ----------------------------------------------------------------

  async startRecording(): Promise<void> {
    const state = this.store.getState();
    if (state.step.kind !== "record" || state.recording) {
      return;
    }
    const category = categoryAt(state.step.index).id;
    const recorder = this.makeRecorder();
    try {
      await recorder.start();
    } catch (err) {
      this.store.update((s) =>
        withCategoryStatus(s, category, {
          kind: "failed",
          reason: recorderFailReason(err),
        }),
      );
      return;
    }
    this.recorder = recorder;
    this.store.update((s) => ({ ...s, recording: true }));
  }

  async stopRecording(): Promise<void> {
    const recorder = this.recorder;
    const state = this.store.getState();
    if (recorder === null || state.step.kind !== "record") {
      return;
    }
    const category = categoryAt(state.step.index).id;
    this.recorder = null;
    this.store.update((s) => ({ ...s, recording: false }));

    try {
      const capture = await recorder.stop();
      const durationS = capture.samples.length / capture.sampleRate;
      const wav = encodeWavPcm16(capture.samples, Math.round(capture.sampleRate));
      this.store.update((s) =>
        withCategoryStatus(s, category, { kind: "recorded", durationS }),
      );
      this.beginUpload(category, wav);
    } catch (err) {
      this.store.update((s) =>
        withCategoryStatus(s, category, {
          kind: "failed",
          reason: recorderFailReason(err),
        }),
      );
    }
  }

  /** Fire-and-track upload; the wizard can move on while it runs. */
  private beginUpload(category: CategoryId, wav: ArrayBuffer): void {
    this.store.update((s) => ({ ...s, pendingUploads: s.pendingUploads + 1 }));
    void (async () => {
      try {
        const sessionId = await this.ensureSession();
        const report = await this.api.uploadAudio(sessionId, category, wav);
        this.store.update((s) =>
          withCategoryStatus(
            { ...s, pendingUploads: s.pendingUploads - 1 },
            category,
            { kind: "uploaded", durationS: report.duration_s },
          ),
        );
      } catch (err) {
        const reason =
          err instanceof ApiError
            ? (UPLOAD_FAIL_REASONS[err.errorCode] ?? "upload")
            : "upload";
        this.store.update((s) =>
          withCategoryStatus(
            { ...s, pendingUploads: s.pendingUploads - 1 },
            category,
            { kind: "failed", reason },
          ),
        );
      }
    })();
  }

  skipCategory(): void {
    const state = this.store.getState();
    if (state.step.kind !== "record") {
      return;
    }
    const category = categoryAt(state.step.index).id;
    this.store.update((s) => withCategoryStatus(s, category, { kind: "skipped" }));
    this.goNext();
  }

  retryCategory(): void {
    const state = this.store.getState();
    if (state.step.kind !== "record") {
      return;
    }
    const category = categoryAt(state.step.index).id;
    this.store.update((s) => withCategoryStatus(s, category, { kind: "pending" }));
  }

  // -- scoring -------------------------------------------------------------------

  async submitForScore(): Promise<void> {
    const before = this.store.getState();
    if (before.step.kind !== "review" || before.busy) {
      return;
    }
    this.store.update((s) => ({ ...s, busy: true, error: null }));
    await this.waitForUploads();

    // Re-check after the queue drains: the last upload may have failed.
    if (!canScore(this.store.getState())) {
      this.store.update((s) => ({
        ...s,
        busy: false,
        error: t("review_needs_input"),
      }));
      return;
    }

    try {
      const sessionId = await this.ensureSession();
      const result = await this.api.score(sessionId);
      this.store.update((s) => ({
        ...withStep(s, { kind: "result" }),
        result,
        busy: false,
      }));
    } catch (err) {
      this.failStep(err);
    }
  }

  private waitForUploads(): Promise<void> {
    if (this.store.getState().pendingUploads === 0) {
      return Promise.resolve();
    }
    return new Promise((resolve) => {
      const unsubscribe = this.store.subscribe((state: WizardState) => {
        if (state.pendingUploads === 0) {
          unsubscribe();
          resolve();
        }
      });
    });
  }

  // -- shared -------------------------------------------------------------------

  private async ensureSession(): Promise<string> {
    const existing = this.store.getState().sessionId;
    if (existing !== null) {
      return existing;
    }
    const sessionId = await this.api.createSession();
    this.store.update((s) => ({ ...s, sessionId }));
    return sessionId;
  }

  private failStep(err: unknown): void {
    const message =
      err instanceof ApiError && err.errorCode === "SessionClosed"
        ? t("error_session_closed")
        : t("error_generic", { message: err instanceof Error ? err.message : String(err) });
    this.store.update((s) => ({ ...s, busy: false, error: message }));
  }
}

function recorderFailReason(err: unknown): string {
  if (err instanceof RecorderError) {
    switch (err.code) {
      case "PermissionDenied":
        return "permission";
      case "NoAudioInput":
        return "no_input";
      case "CaptureTooShort":
        return "too_short";
    }
  }
  return "upload";
}
