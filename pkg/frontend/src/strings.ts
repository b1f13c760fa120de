/** UI copy, keyed so every rendered string goes through one table.
 *
 * Only English ships today; the selector exists so adding a locale is a
 * table entry, not a refactor. Longer passages (welcome text, disclaimer)
 * are placeholder wording pending review — the structure around them is
 * what is final.
 */

export interface LocaleInfo {
  readonly code: string;
  readonly label: string;
}

export const LOCALES: readonly LocaleInfo[] = [{ code: "en", label: "English" }];

export const DEFAULT_LOCALE = "en";

let activeLocale = DEFAULT_LOCALE;

export function setLocale(code: string): void {
  if (!LOCALES.some((l) => l.code === code)) {
    throw new RangeError(`unsupported locale: ${code}`);
  }
  activeLocale = code;
}

export function currentLocale(): string {
  return activeLocale;
}

const EN = {
  app_title: "Respiratory sound screening",
  nav_next: "Continue",
  nav_back: "Back",
  nav_skip: "Skip this step",

  welcome_heading: "Welcome",
  welcome_body:
    "This tool listens to short recordings of your breathing, cough, and " +
    "voice, combines them with a brief health questionnaire, and estimates " +
    "a screening score. It takes about five minutes.",
  welcome_start: "Get started",

  metadata_heading: "About you",
  metadata_age_label: "Age group",
  metadata_age_placeholder: "Select an age group",
  metadata_gender_label: "Gender (optional)",
  metadata_gender_unspecified: "Prefer not to say",

  symptoms_heading: "Health questionnaire",
  symptoms_intro: "Tick everything that applies to you right now.",
  symptoms_current_legend: "Current symptoms",
  symptoms_conditions_legend: "Pre-existing conditions",
  symptoms_contact_label: "Been in contact with a confirmed-positive person?",
  contact_yes: "Yes",
  contact_no: "No",
  contact_unknown: "Don't know",

  symptom_cough: "Cough",
  symptom_cold: "Cold",
  symptom_fever: "Fever",
  symptom_diarrhoea: "Diarrhoea",
  symptom_muscle_pain: "Muscle pain",
  symptom_breathing_difficulty: "Difficulty breathing",
  symptom_loss_of_smell: "Loss of smell",
  symptom_sore_throat: "Sore throat",
  symptom_fatigue: "Fatigue",
  condition_respiratory_illness: "Chronic respiratory illness",
  condition_diabetes: "Diabetes",
  condition_hypertension: "Hypertension",

  record_heading: "Record your sounds",
  record_progress: "Recording {current} of {total}",
  record_start: "Start recording",
  record_stop: "Stop recording",
  record_retry: "Record again",
  record_skip: "Skip this sound",
  record_status_pending: "Not recorded yet",
  record_status_recorded: "Captured {seconds}s, uploading…",
  record_status_uploaded: "Uploaded ({seconds}s)",
  record_status_skipped: "Skipped",
  record_status_failed: "Recording rejected: {reason}",

  fail_silent: "the clip was silent — check your microphone and try again",
  fail_too_short: "the recording was shorter than one second",
  fail_too_short_or_long: "clips must be between 1 and 30 seconds",
  fail_too_large: "the recording was too large to upload",
  fail_upload: "the upload failed — you can retry or skip",
  fail_permission:
    "Microphone access was denied. Allow microphone use for this page in " +
    "your browser settings, then record again — or skip this sound.",
  fail_no_input: "No microphone was found. Connect one, or skip this sound.",

  review_heading: "Review",
  review_intro: "Here is what will be scored. You can go back one step to change it.",
  review_metadata_given: "Profile: age {age}",
  review_metadata_skipped: "Profile: skipped",
  review_symptoms_given: "Questionnaire: completed",
  review_symptoms_skipped: "Questionnaire: skipped",
  review_uploads: "Recordings uploaded: {count} of {total}",
  review_waiting: "Waiting for {count} upload(s) to finish…",
  review_submit: "Get my score",
  review_needs_input:
    "Record at least one sound or complete the questionnaire before scoring.",

  result_heading: "Your screening score",
  result_breakdown: "What contributed",
  result_col_source: "Source",
  result_col_score: "Score",
  result_sources_used: "Sources used: {sources}",
  result_source_symptoms: "Questionnaire",
  result_disclaimer:
    "This score is a screening aid produced by an experimental research " +
    "tool. It is not a medical diagnosis. If you feel unwell, contact a " +
    "healthcare professional regardless of the number shown here.",

  error_session_closed:
    "This session has expired or is already finished. Reload to start over.",
  error_generic: "Something went wrong: {message}",

  locale_selector_label: "Language",
} as const;

export type StringKey = keyof typeof EN;

const TABLES: Record<string, Record<StringKey, string>> = { en: EN };

/** Look up a string and substitute `{name}` placeholders. */
export function t(key: StringKey, params?: Record<string, string | number>): string {
  const table = TABLES[activeLocale] ?? EN;
  let text: string = table[key];
  if (params) {
    for (const [name, value] of Object.entries(params)) {
      text = text.split(`{${name}}`).join(String(value));
    }
  }
  return text;
}
