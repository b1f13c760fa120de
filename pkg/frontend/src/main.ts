/** Entry point: build the store, API client, and controller, then keep the
 * DOM in sync with the store. */

import { ApiClient } from "./api.js";
import { WizardController } from "./controller.js";
import { createStore } from "./state.js";
import { setLocale } from "./strings.js";
import { render } from "./ui.js";
import type { UiHandlers } from "./ui.js";

export function mount(root: HTMLElement): void {
  const store = createStore();
  const api = new ApiClient();
  const controller = new WizardController(store, api);

  const handlers: UiHandlers = {
    next: () => controller.goNext(),
    back: () => controller.goBack(),
    skip: () => controller.skipStep(),
    submitMetadata: (metadata) => void controller.submitMetadata(metadata),
    submitSymptoms: (answers) => void controller.submitSymptoms(answers),
    startRecording: () => void controller.startRecording(),
    stopRecording: () => void controller.stopRecording(),
    skipCategory: () => controller.skipCategory(),
    retryCategory: () => controller.retryCategory(),
    submitForScore: () => void controller.submitForScore(),
    setLocale: (code) => {
      setLocale(code);
      render(root, store.getState(), handlers);
    },
  };

  store.subscribe((state) => render(root, state, handlers));
  render(root, store.getState(), handlers);
}

const appRoot = typeof document !== "undefined" ? document.getElementById("app") : null;
if (appRoot !== null) {
  mount(appRoot);
}
