// @vitest-environment jsdom
import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { WizardController } from "../src/controller.js";
import { createInitialState, createStore, withCategoryStatus, withStep } from "../src/state.js";
import type { WizardState } from "../src/state.js";
import { setLocale } from "../src/strings.js";
import {
  formatScorePercent,
  render,
  resetFocusTracking,
  sourceLabel,
  statusText,
} from "../src/ui.js";
import type { UiHandlers } from "../src/ui.js";
import { flush, makeFakeService, makeStubRecorder, sine } from "./helpers.js";

beforeEach(() => {
  setLocale("en");
  resetFocusTracking();
  document.body.textContent = "";
});

const NOOP_HANDLERS: UiHandlers = {
  next() {},
  back() {},
  skip() {},
  submitMetadata() {},
  submitSymptoms() {},
  startRecording() {},
  stopRecording() {},
  skipCategory() {},
  retryCategory() {},
  submitForScore() {},
  setLocale() {},
};

function renderState(state: WizardState): HTMLElement {
  const root = document.createElement("div");
  document.body.append(root);
  render(root, state, NOOP_HANDLERS);
  return root;
}

function buttonByText(root: HTMLElement, text: string): HTMLButtonElement {
  const match = [...root.querySelectorAll("button")].find(
    (b) => b.textContent === text,
  );
  if (match === undefined) {
    throw new Error(`no button labelled ${JSON.stringify(text)}`);
  }
  return match;
}

async function until(pred: () => boolean, what: string): Promise<void> {
  for (let i = 0; i < 200; i++) {
    if (pred()) {
      return;
    }
    await flush();
  }
  throw new Error(`timed out waiting for ${what}`);
}

describe("formatScorePercent", () => {
  it("rounds the fused probability to a whole percentage", () => {
    expect(formatScorePercent(0)).toBe("0%");
    expect(formatScorePercent(1)).toBe("100%");
    expect(formatScorePercent(0.634)).toBe("63%");
    expect(formatScorePercent(0.005)).toBe("1%");
    expect(formatScorePercent(0.494999)).toBe("49%");
    expect(formatScorePercent(0.107)).toBe("11%");
  });
});

describe("step rendering", () => {
  it("shows the shared instruction wording on a recording step", () => {
    const state = withStep(createInitialState(), { kind: "record", index: 0 });
    const root = renderState(state);

    expect(root.querySelector("h2")?.textContent).toBe("Deep breathing");
    expect(root.querySelector(".instruction")?.textContent).toBe(
      "Few respiration cycles in deep and shallow manner",
    );
    expect(root.querySelector(".progress")?.textContent).toBe("Recording 1 of 9");
  });

  it("disables Continue until the category is settled", () => {
    let state = withStep(createInitialState(), { kind: "record", index: 1 });
    let root = renderState(state);
    expect(buttonByText(root, "Continue").disabled).toBe(true);

    state = withCategoryStatus(state, "breathing-shallow", { kind: "skipped" });
    root = renderState(state);
    expect(buttonByText(root, "Continue").disabled).toBe(false);
  });

  it("shows guidance when microphone permission was denied", () => {
    let state = withStep(createInitialState(), { kind: "record", index: 2 });
    state = withCategoryStatus(state, "cough-heavy", {
      kind: "failed",
      reason: "permission",
    });
    const root = renderState(state);

    expect(root.querySelector(".status")?.textContent).toMatch(/browser settings/);
    expect(buttonByText(root, "Record again")).toBeDefined();
    expect(buttonByText(root, "Skip this sound")).toBeDefined();
  });

  it("renders the result payload: percent, breakdown, sources, disclaimer", () => {
    const result = {
      per_source: { "cough-heavy": 0.82, symptoms: 0.35 },
      fused: 0.585,
      sources_used: ["cough-heavy", "symptoms"],
      timestamp: 9,
    };
    const state = {
      ...withStep(createInitialState(), { kind: "result" }),
      result,
    };
    const root = renderState(state);

    expect(root.querySelector(".score-percent")?.textContent).toBe(
      formatScorePercent(result.fused),
    );
    expect(root.querySelector(".score-percent")?.textContent).toBe("59%");

    const rows = [...root.querySelectorAll("table.breakdown tr")];
    expect(rows.length).toBe(1 + result.sources_used.length);
    expect(rows[1].textContent).toContain("Heavy cough");
    expect(rows[1].textContent).toContain("82%");
    expect(rows[2].textContent).toContain("Questionnaire");
    expect(rows[2].textContent).toContain("35%");

    expect(root.querySelector(".sources-used")?.textContent).toContain("Heavy cough");
    expect(root.querySelector(".disclaimer")?.textContent).toMatch(
      /not a medical diagnosis/,
    );
  });

  it("keeps every interactive element native and in natural tab order", () => {
    const steps: WizardState["step"][] = [
      { kind: "welcome" },
      { kind: "metadata" },
      { kind: "symptoms" },
      { kind: "record", index: 0 },
      { kind: "review" },
    ];
    for (const step of steps) {
      resetFocusTracking();
      const root = renderState(withStep(createInitialState(), step));
      for (const node of root.querySelectorAll("[tabindex]")) {
        expect(node.getAttribute("tabindex")).toBe("-1"); // headings only
      }
      for (const input of root.querySelectorAll("input, select")) {
        const id = input.getAttribute("id");
        expect(id).toBeTruthy();
        expect(root.querySelector(`label[for="${id}"]`)).not.toBeNull();
      }
      for (const button of root.querySelectorAll("button")) {
        expect(["button", "submit"]).toContain(button.type);
      }
    }
  });

  it("labels status lines for every category state", () => {
    expect(statusText({ kind: "pending" })).toBe("Not recorded yet");
    expect(statusText({ kind: "recorded", durationS: 2.04 })).toContain("2.0");
    expect(statusText({ kind: "uploaded", durationS: 3.0 })).toBe("Uploaded (3.0s)");
    expect(statusText({ kind: "skipped" })).toBe("Skipped");
    expect(statusText({ kind: "failed", reason: "silent" })).toMatch(/silent/);
    expect(statusText({ kind: "failed", reason: "too_short_or_long" })).toMatch(
      /between 1 and 30/,
    );
  });

  it("maps wire source ids onto human labels", () => {
    expect(sourceLabel("symptoms")).toBe("Questionnaire");
    expect(sourceLabel("vowel-o")).toBe("Vowel [u] (as in boot)");
    expect(sourceLabel("mystery")).toBe("mystery");
  });

  it("offers the locale picker with the shipped locale selected", () => {
    const root = renderState(createInitialState());
    const picker = root.querySelector<HTMLSelectElement>("select#locale");
    expect(picker).not.toBeNull();
    expect(picker?.value).toBe("en");
    expect([...(picker?.options ?? [])].map((o) => o.textContent)).toEqual(["English"]);
  });
});

describe("full keyboard-operable walk", () => {
  it("completes welcome to result using only native controls", async () => {
    const service = makeFakeService();
    const store = createStore();
    const api = new ApiClient("http://fake", (u, i) => service.fetchImpl(u, i));
    const controller = new WizardController(store, api, () =>
      makeStubRecorder(sine(440, 2.0), 16000),
    );

    const root = document.createElement("div");
    document.body.append(root);
    const handlers: UiHandlers = {
      next: () => controller.goNext(),
      back: () => controller.goBack(),
      skip: () => controller.skipStep(),
      submitMetadata: (m) => void controller.submitMetadata(m),
      submitSymptoms: (a) => void controller.submitSymptoms(a),
      startRecording: () => void controller.startRecording(),
      stopRecording: () => void controller.stopRecording(),
      skipCategory: () => controller.skipCategory(),
      retryCategory: () => controller.retryCategory(),
      submitForScore: () => void controller.submitForScore(),
      setLocale: (code) => setLocale(code),
    };
    store.subscribe((s) => render(root, s, handlers));
    render(root, store.getState(), handlers);

    // Welcome
    expect(root.querySelector("h2")?.textContent).toBe("Welcome");
    buttonByText(root, "Get started").click();
    expect(root.querySelector("h2")?.textContent).toBe("About you");
    expect(document.activeElement).toBe(root.querySelector("h2"));

    // Profile: pick an age band, submit the form (Enter-key path).
    const age = root.querySelector<HTMLSelectElement>("select#age-band");
    age!.value = "16-30";
    root.querySelector("form")!.requestSubmit();
    await until(() => store.getState().step.kind === "symptoms", "symptoms step");

    // Questionnaire: tick one symptom; age band came along from the profile.
    const fever = root.querySelector<HTMLInputElement>("input#q-fever");
    fever!.checked = true;
    expect(root.querySelector<HTMLSelectElement>("select#symptoms-age-band")!.value).toBe(
      "16-30",
    );
    root.querySelector("form")!.requestSubmit();
    await until(() => store.getState().step.kind === "record", "first recording");

    // Skip the two breathing sounds.
    buttonByText(root, "Skip this sound").click();
    buttonByText(root, "Skip this sound").click();
    expect(store.getState().step).toEqual({ kind: "record", index: 2 });
    expect(root.querySelector("h2")?.textContent).toBe("Heavy cough");

    // Record the heavy cough.
    buttonByText(root, "Start recording").click();
    await until(() => store.getState().recording, "recording to start");
    buttonByText(root, "Stop recording").click();
    await until(
      () => store.getState().categories["cough-heavy"].kind === "uploaded",
      "upload to settle",
    );
    expect(root.querySelector(".status")?.textContent).toBe("Uploaded (2.0s)");

    buttonByText(root, "Continue").click();
    // Skip everything that remains.
    for (let i = 0; i < 6; i++) {
      buttonByText(root, "Skip this sound").click();
    }
    await until(() => store.getState().step.kind === "review", "review step");

    expect(root.textContent).toContain("Recordings uploaded: 1 of 9");
    expect(root.textContent).toContain("Questionnaire: completed");
    const submit = buttonByText(root, "Get my score");
    expect(submit.disabled).toBe(false);
    submit.click();
    await until(() => store.getState().step.kind === "result", "result step");

    const payload = store.getState().result!;
    expect(payload.sources_used).toEqual(["cough-heavy", "symptoms"]);
    const shown = root.querySelector(".score-percent")?.textContent;
    expect(shown).toBe(formatScorePercent(payload.fused));
    expect(shown).toBe(`${Math.round(100 * payload.fused)}%`);

    // Skipped categories stay out of the breakdown.
    expect(root.querySelector("table.breakdown")?.textContent).not.toContain(
      "Deep breathing",
    );
  });
});
