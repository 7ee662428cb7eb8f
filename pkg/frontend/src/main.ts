import { analyzeText } from "./api.js";
import { renderResult } from "./render.js";
import { AnalysisStore } from "./viewmodel.js";

// Build-time default; the settings field below overrides it at runtime.
export const DEFAULT_SERVICE_URL = "http://127.0.0.1:8000";

const app = document.querySelector<HTMLDivElement>("#app");

if (app) {
  app.innerHTML = `
    <h1>fincat</h1>
    <p class="subtitle">in-claim vs out-of-claim numeral analysis</p>
    <textarea id="input-text" rows="4"
      placeholder="the company expects revenue growth of 12% this fiscal year"></textarea>
    <div class="controls">
      <button id="submit-btn">Analyze</button>
      <button id="clear-btn" class="secondary">Clear</button>
      <label class="settings">service
        <input id="base-url" type="text" value="${DEFAULT_SERVICE_URL}" />
      </label>
    </div>
    <div id="result"></div>
  `;

  const input = app.querySelector<HTMLTextAreaElement>("#input-text")!;
  const submitBtn = app.querySelector<HTMLButtonElement>("#submit-btn")!;
  const clearBtn = app.querySelector<HTMLButtonElement>("#clear-btn")!;
  const baseUrl = app.querySelector<HTMLInputElement>("#base-url")!;
  const result = app.querySelector<HTMLDivElement>("#result")!;

  const store = new AnalysisStore((text) => analyzeText(baseUrl.value, text));

  store.subscribe((state) => {
    result.innerHTML = renderResult(state);
    submitBtn.disabled = state.status === "loading";
    if (input.value !== state.inputText) input.value = state.inputText;
  });

  input.addEventListener("input", () => store.setInput(input.value));
  submitBtn.addEventListener("click", () => void store.submit());
  clearBtn.addEventListener("click", () => store.clear());
  input.addEventListener("keydown", (event) => {
    if (event.key === "Enter" && (event.ctrlKey || event.metaKey)) {
      void store.submit();
    }
  });
}
