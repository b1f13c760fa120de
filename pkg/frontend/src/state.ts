/** Wizard state: one source of truth, pure transition rules.
 *
 * The flow is linear — welcome, profile, questionnaire, nine recording
 * steps, review, result — and navigation is deliberately restricted to
 * "forward" and "one step back". That keeps every screen's preconditions
 * obvious: by the time the review screen renders, everything before it is
 * settled or explicitly skipped.
 *
 * The store itself is a plain observable; all async work (uploads,
 * scoring) lives in the controller and lands here via `update`.
 */

import { CATEGORIES, CATEGORY_COUNT, type CategoryId } from "./categories.js";
import type {
  ScreenResultView,
  SessionMetadata,
  SymptomAnswers,
} from "./api.js";

export type Step =
  | { kind: "welcome" }
  | { kind: "metadata" }
  | { kind: "symptoms" }
  | { kind: "record"; index: number }
  | { kind: "review" }
  | { kind: "result" };

export type CategoryStatus =
  | { kind: "pending" }
  | { kind: "recorded"; durationS: number } // captured, upload still in flight
  | { kind: "uploaded"; durationS: number }
  | { kind: "failed"; reason: string }
  | { kind: "skipped" };

export interface WizardState {
  step: Step;
  sessionId: string | null;
  metadata: SessionMetadata | null;
  symptoms: SymptomAnswers | null;
  categories: Record<CategoryId, CategoryStatus>;
  pendingUploads: number;
  recording: boolean;
  busy: boolean; // a submit/score request is outstanding
  result: ScreenResultView | null;
  error: string | null;
}

export function createInitialState(): WizardState {
  const categories = {} as Record<CategoryId, CategoryStatus>;
  for (const info of CATEGORIES) {
    categories[info.id] = { kind: "pending" };
  }
  return {
    step: { kind: "welcome" },
    sessionId: null,
    metadata: null,
    symptoms: null,
    categories,
    pendingUploads: 0,
    recording: false,
    busy: false,
    result: null,
    error: null,
  };
}

// -- navigation rules ---------------------------------------------------------

/** Where "Continue" leads, or null if forward motion is not allowed here.
 *
 * The review screen is the end of `nextStep`'s world: the result step is
 * only reachable through a successful score submission, never by walking
 * forward.
 */
export function nextStep(state: WizardState): Step | null {
  const step = state.step;
  switch (step.kind) {
    case "welcome":
      return { kind: "metadata" };
    case "metadata":
      return { kind: "symptoms" };
    case "symptoms":
      return { kind: "record", index: 0 };
    case "record": {
      if (!categorySettled(state, step.index)) {
        return null;
      }
      return step.index + 1 < CATEGORY_COUNT
        ? { kind: "record", index: step.index + 1 }
        : { kind: "review" };
    }
    case "review":
      return null;
    case "result":
      return null;
  }
}

/** One step back, or null at either end of the flow. */
export function backStep(step: Step): Step | null {
  switch (step.kind) {
    case "welcome":
      return null;
    case "metadata":
      return { kind: "welcome" };
    case "symptoms":
      return { kind: "metadata" };
    case "record":
      return step.index === 0
        ? { kind: "symptoms" }
        : { kind: "record", index: step.index - 1 };
    case "review":
      return { kind: "record", index: CATEGORY_COUNT - 1 };
    case "result":
      return null; // terminal: a new screening is a new session
  }
}

/** A recording step is passable once its category has a decision:
 * captured (upload may still be in flight), uploaded, or skipped.
 * Pending and failed both demand the user choose — record, retry, or skip. */
export function categorySettled(state: WizardState, index: number): boolean {
  const status = state.categories[CATEGORIES[index].id];
  return (
    status.kind === "recorded" || status.kind === "uploaded" || status.kind === "skipped"
  );
}

/** Scoring needs at least one signal: an uploaded clip or the questionnaire. */
export function canScore(state: WizardState): boolean {
  const anyUploaded = Object.values(state.categories).some(
    (s) => s.kind === "uploaded",
  );
  return anyUploaded || state.symptoms !== null;
}

/** The submit button also waits for in-flight uploads to settle, so the
 * score reflects exactly what the review screen shows. */
export function readyToSubmit(state: WizardState): boolean {
  return canScore(state) && state.pendingUploads === 0 && !state.busy;
}

export function uploadedCount(state: WizardState): number {
  return Object.values(state.categories).filter((s) => s.kind === "uploaded").length;
}

// -- store --------------------------------------------------------------------

export type Listener = (state: WizardState) => void;

export interface Store {
  getState(): WizardState;
  update(mutate: (state: WizardState) => WizardState): void;
  subscribe(listener: Listener): () => void;
}

export function createStore(initial?: WizardState): Store {
  let state = initial ?? createInitialState();
  const listeners = new Set<Listener>();
  return {
    getState: () => state,
    update(mutate) {
      state = mutate(state);
      for (const listener of listeners) {
        listener(state);
      }
    },
    subscribe(listener) {
      listeners.add(listener);
      return () => listeners.delete(listener);
    },
  };
}

// -- small state helpers used by the controller --------------------------------

export function withCategoryStatus(
  state: WizardState,
  id: CategoryId,
  status: CategoryStatus,
): WizardState {
  return { ...state, categories: { ...state.categories, [id]: status } };
}

export function withStep(state: WizardState, step: Step): WizardState {
  return { ...state, step, error: null };
}
