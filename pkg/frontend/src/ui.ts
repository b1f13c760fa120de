/** DOM rendering for the wizard. No framework: each step is a function
 * from state to elements, and the whole view is rebuilt on every store
 * update. Forms only push to the store on submit, so nothing the user is
 * mid-way through typing gets re-rendered out from under them.
 *
 * Accessibility ground rules: only native interactive elements (button,
 * select, input, label), no positive tabindex anywhere, the step heading
 * takes focus when the step changes, and live status lines are announced
 * via aria-live.
 */

import { AGE_BANDS, CONDITION_FIELDS, SYMPTOM_FIELDS } from "./api.js";
import type { SessionMetadata, SymptomAnswers } from "./api.js";
import { CATEGORIES, CATEGORY_COUNT, categoryAt } from "./categories.js";
import {
  canScore,
  categorySettled,
  readyToSubmit,
  uploadedCount,
} from "./state.js";
import type { CategoryStatus, WizardState } from "./state.js";
import { LOCALES, currentLocale, t } from "./strings.js";
import type { StringKey } from "./strings.js";

export interface UiHandlers {
  next(): void;
  back(): void;
  skip(): void;
  submitMetadata(metadata: SessionMetadata): void;
  submitSymptoms(answers: SymptomAnswers): void;
  startRecording(): void;
  stopRecording(): void;
  skipCategory(): void;
  retryCategory(): void;
  submitForScore(): void;
  setLocale(code: string): void;
}

/** The one formatting rule for the headline number: the fused probability
 * from the API, as a whole percentage. */
export function formatScorePercent(fused: number): string {
  return `${Math.round(100 * fused)}%`;
}

let lastFocusKey: string | null = null;

export function render(root: HTMLElement, state: WizardState, handlers: UiHandlers): void {
  root.textContent = "";
  root.append(renderHeader(handlers));

  if (state.error !== null) {
    const banner = el("p", { class: "error-banner", role: "alert" });
    banner.textContent = state.error;
    root.append(banner);
  }

  const main = el("main", { class: "step" });
  switch (state.step.kind) {
    case "welcome":
      main.append(...renderWelcome(handlers));
      break;
    case "metadata":
      main.append(...renderMetadata(state, handlers));
      break;
    case "symptoms":
      main.append(...renderSymptoms(state, handlers));
      break;
    case "record":
      main.append(...renderRecord(state, state.step.index, handlers));
      break;
    case "review":
      main.append(...renderReview(state, handlers));
      break;
    case "result":
      main.append(...renderResult(state));
      break;
  }
  root.append(main);

  // Move focus to the heading when the step changes, and only then —
  // background upload updates must not yank focus around.
  const focusKey =
    state.step.kind === "record" ? `record:${state.step.index}` : state.step.kind;
  if (focusKey !== lastFocusKey) {
    lastFocusKey = focusKey;
    main.querySelector<HTMLElement>("h2[tabindex]")?.focus();
  }
}

/** Reset the focus tracker (tests render many flows into fresh roots). */
export function resetFocusTracking(): void {
  lastFocusKey = null;
}

// -- steps ---------------------------------------------------------------------

function renderWelcome(handlers: UiHandlers): Element[] {
  const start = button(t("welcome_start"), handlers.next, { class: "primary" });
  return [heading(t("welcome_heading")), paragraph(t("welcome_body")), start];
}

function renderMetadata(state: WizardState, handlers: UiHandlers): Element[] {
  const form = el("form") as HTMLFormElement;

  const age = select(
    "age-band",
    t("metadata_age_label"),
    [["", t("metadata_age_placeholder")], ...AGE_BANDS.map((b) => [b, b] as [string, string])],
    state.metadata?.age_band ?? "",
  );
  const gender = select(
    "gender",
    t("metadata_gender_label"),
    [
      ["", t("metadata_gender_unspecified")],
      ["female", "Female"],
      ["male", "Male"],
      ["other", "Other"],
    ],
    state.metadata?.gender ?? "",
  );

  form.append(age.wrapper, gender.wrapper, navRow(handlers, { submitLabel: t("nav_next") }));
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    if (age.control.value === "") {
      age.control.focus();
      return;
    }
    const metadata: SessionMetadata = {
      age_band: age.control.value,
      locale: currentLocale(),
    };
    if (gender.control.value !== "") {
      metadata.gender = gender.control.value;
    }
    handlers.submitMetadata(metadata);
  });

  return [heading(t("metadata_heading")), form];
}

function renderSymptoms(state: WizardState, handlers: UiHandlers): Element[] {
  const form = el("form") as HTMLFormElement;

  const symptomBoxes = checkboxGroup(t("symptoms_current_legend"), SYMPTOM_FIELDS, "symptom");
  const conditionBoxes = checkboxGroup(
    t("symptoms_conditions_legend"),
    CONDITION_FIELDS,
    "condition",
  );
  const contact = select(
    "contact",
    t("symptoms_contact_label"),
    [
      ["unknown", t("contact_unknown")],
      ["yes", t("contact_yes")],
      ["no", t("contact_no")],
    ],
    "unknown",
  );
  const age = select(
    "symptoms-age-band",
    t("metadata_age_label"),
    [["", t("metadata_age_placeholder")], ...AGE_BANDS.map((b) => [b, b] as [string, string])],
    state.symptoms?.age_band ?? state.metadata?.age_band ?? "",
  );

  form.append(
    paragraph(t("symptoms_intro")),
    symptomBoxes.fieldset,
    conditionBoxes.fieldset,
    contact.wrapper,
    age.wrapper,
    navRow(handlers, { submitLabel: t("nav_next") }),
  );
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    if (age.control.value === "") {
      age.control.focus();
      return;
    }
    const answers = {
      age_band: age.control.value,
      contact_with_positive:
        contact.control.value === "unknown" ? null : contact.control.value === "yes",
    } as SymptomAnswers;
    for (const field of SYMPTOM_FIELDS) {
      answers[field] = symptomBoxes.controls[field].checked;
    }
    for (const field of CONDITION_FIELDS) {
      answers[field] = conditionBoxes.controls[field].checked;
    }
    handlers.submitSymptoms(answers);
  });

  return [heading(t("symptoms_heading")), form];
}

function renderRecord(state: WizardState, index: number, handlers: UiHandlers): Element[] {
  const info = categoryAt(index);
  const status = state.categories[info.id];

  const progress = paragraph(
    t("record_progress", { current: index + 1, total: CATEGORY_COUNT }),
  );
  progress.className = "progress";

  const instruction = paragraph(info.instruction);
  instruction.className = "instruction";

  const statusLine = paragraph(statusText(status));
  statusLine.className = "status";
  statusLine.setAttribute("aria-live", "polite");

  const controls = el("div", { class: "controls" });
  if (state.recording) {
    controls.append(button(t("record_stop"), handlers.stopRecording, { class: "primary" }));
  } else {
    switch (status.kind) {
      case "pending":
        controls.append(
          button(t("record_start"), handlers.startRecording, { class: "primary" }),
          button(t("record_skip"), handlers.skipCategory),
        );
        break;
      case "recorded":
      case "uploaded":
        // Re-recording replaces the clip server-side; skipping after an
        // upload is not offered because the service would score it anyway.
        controls.append(button(t("record_retry"), handlers.retryCategory));
        break;
      case "failed":
        controls.append(
          button(t("record_retry"), handlers.retryCategory, { class: "primary" }),
          button(t("record_skip"), handlers.skipCategory),
        );
        break;
      case "skipped":
        controls.append(button(t("record_retry"), handlers.retryCategory));
        break;
    }
  }

  const nav = el("div", { class: "nav" });
  nav.append(button(t("nav_back"), handlers.back));
  const next = button(t("nav_next"), handlers.next, { class: "primary" });
  next.disabled = state.recording || !categorySettled(state, index);
  nav.append(next);

  return [progress, heading(info.label), instruction, statusLine, controls, nav];
}

function renderReview(state: WizardState, handlers: UiHandlers): Element[] {
  const items = el("ul", { class: "review-list" });

  const metaLine = el("li");
  metaLine.textContent =
    state.metadata === null
      ? t("review_metadata_skipped")
      : t("review_metadata_given", { age: state.metadata.age_band });
  const symptomsLine = el("li");
  symptomsLine.textContent =
    state.symptoms === null ? t("review_symptoms_skipped") : t("review_symptoms_given");
  const uploadsLine = el("li");
  uploadsLine.textContent = t("review_uploads", {
    count: uploadedCount(state),
    total: CATEGORY_COUNT,
  });
  items.append(metaLine, symptomsLine, uploadsLine);

  const perCategory = el("ul", { class: "category-summary" });
  for (const info of CATEGORIES) {
    const line = el("li");
    line.textContent = `${info.label}: ${statusText(state.categories[info.id])}`;
    perCategory.append(line);
  }

  const out: Element[] = [
    heading(t("review_heading")),
    paragraph(t("review_intro")),
    items,
    perCategory,
  ];

  const liveLine = paragraph("");
  liveLine.setAttribute("aria-live", "polite");
  liveLine.className = "status";
  if (state.pendingUploads > 0) {
    liveLine.textContent = t("review_waiting", { count: state.pendingUploads });
  } else if (!canScore(state)) {
    liveLine.textContent = t("review_needs_input");
  }
  out.push(liveLine);

  const nav = el("div", { class: "nav" });
  nav.append(button(t("nav_back"), handlers.back));
  const submit = button(t("review_submit"), handlers.submitForScore, { class: "primary" });
  submit.disabled = !readyToSubmit(state);
  nav.append(submit);
  out.push(nav);

  return out;
}

function renderResult(state: WizardState): Element[] {
  const result = state.result;
  if (result === null) {
    return [heading(t("result_heading"))];
  }

  const percent = el("p", { class: "score-percent" });
  percent.textContent = formatScorePercent(result.fused);

  const breakdown = el("table", { class: "breakdown" });
  const head = el("tr");
  head.append(el("th", {}, t("result_col_source")), el("th", {}, t("result_col_score")));
  breakdown.append(head);
  for (const source of result.sources_used) {
    const row = el("tr");
    const name = el("td");
    name.textContent = sourceLabel(source);
    const value = el("td");
    const perSource = result.per_source[source];
    value.textContent = perSource === undefined ? "—" : formatScorePercent(perSource);
    row.append(name, value);
    breakdown.append(row);
  }

  const sources = paragraph(
    t("result_sources_used", { sources: result.sources_used.map(sourceLabel).join(", ") }),
  );
  sources.className = "sources-used";

  const disclaimer = paragraph(t("result_disclaimer"));
  disclaimer.className = "disclaimer";

  return [
    heading(t("result_heading")),
    percent,
    el("h3", {}, t("result_breakdown")),
    breakdown,
    sources,
    disclaimer,
  ];
}

// -- shared pieces ---------------------------------------------------------------

export function statusText(status: CategoryStatus): string {
  switch (status.kind) {
    case "pending":
      return t("record_status_pending");
    case "recorded":
      return t("record_status_recorded", { seconds: status.durationS.toFixed(1) });
    case "uploaded":
      return t("record_status_uploaded", { seconds: status.durationS.toFixed(1) });
    case "skipped":
      return t("record_status_skipped");
    case "failed": {
      if (status.reason === "permission") {
        return t("fail_permission");
      }
      if (status.reason === "no_input") {
        return t("fail_no_input");
      }
      return t("record_status_failed", {
        reason: t(`fail_${status.reason}` as StringKey),
      });
    }
  }
}

export function sourceLabel(source: string): string {
  if (source === "symptoms") {
    return t("result_source_symptoms");
  }
  const info = CATEGORIES.find((c) => c.id === source);
  return info === undefined ? source : info.label;
}

function renderHeader(handlers: UiHandlers): Element {
  const header = el("header");
  const title = el("h1", {}, t("app_title"));

  const localePicker = select(
    "locale",
    t("locale_selector_label"),
    LOCALES.map((l) => [l.code, l.label] as [string, string]),
    currentLocale(),
  );
  localePicker.control.addEventListener("change", () => {
    handlers.setLocale(localePicker.control.value);
  });
  localePicker.wrapper.classList.add("locale-picker");

  header.append(title, localePicker.wrapper);
  return header;
}

function navRow(handlers: UiHandlers, opts: { submitLabel: string }): Element {
  const nav = el("div", { class: "nav" });
  const submit = el("button", { class: "primary" }, opts.submitLabel) as HTMLButtonElement;
  submit.type = "submit";
  nav.append(
    button(t("nav_back"), handlers.back),
    button(t("nav_skip"), handlers.skip),
    submit,
  );
  return nav;
}

function heading(text: string): Element {
  const h = el("h2", { tabindex: "-1" });
  h.textContent = text;
  return h;
}

function paragraph(text: string): HTMLParagraphElement {
  const p = el("p") as HTMLParagraphElement;
  p.textContent = text;
  return p;
}

function button(
  label: string,
  onClick: () => void,
  attrs: Record<string, string> = {},
): HTMLButtonElement {
  const b = el("button", attrs, label) as HTMLButtonElement;
  b.type = "button";
  b.addEventListener("click", onClick);
  return b;
}

function select(
  id: string,
  label: string,
  options: [string, string][],
  value: string,
): { wrapper: Element; control: HTMLSelectElement } {
  const wrapper = el("div", { class: "field" });
  const labelEl = el("label", { for: id }, label);
  const control = el("select", { id }) as HTMLSelectElement;
  for (const [optionValue, optionLabel] of options) {
    const option = el("option", { value: optionValue }, optionLabel) as HTMLOptionElement;
    control.append(option);
  }
  control.value = value;
  wrapper.append(labelEl, control);
  return { wrapper, control };
}

function checkboxGroup<Field extends string>(
  legend: string,
  fields: readonly Field[],
  keyPrefix: string,
): { fieldset: Element; controls: Record<Field, HTMLInputElement> } {
  const fieldset = el("fieldset");
  fieldset.append(el("legend", {}, legend));
  const controls = {} as Record<Field, HTMLInputElement>;
  for (const field of fields) {
    const row = el("div", { class: "checkbox-row" });
    const input = el("input", { type: "checkbox", id: `q-${field}` }) as HTMLInputElement;
    const label = el("label", { for: `q-${field}` }, t(`${keyPrefix}_${field}` as StringKey));
    row.append(input, label);
    fieldset.append(row);
    controls[field] = input;
  }
  return { fieldset, controls };
}

function el(
  tag: string,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElement {
  const node = document.createElement(tag);
  for (const [name, value] of Object.entries(attrs)) {
    node.setAttribute(name, value);
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}
