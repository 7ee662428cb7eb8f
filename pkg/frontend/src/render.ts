import type { ViewState } from "./viewmodel.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** Render the result area for the current state; pure, no DOM access. */
export function renderResult(state: ViewState): string {
  switch (state.status) {
    case "idle":
      return '<p class="hint">Paste a sentence and press Analyze.</p>';
    case "loading":
      return '<p class="loading">Analyzing…</p>';
    case "error":
      return `<div class="error-banner" role="alert">${escapeHtml(state.errorMessage)}</div>`;
    case "done":
      return renderDone(state);
  }
}

function renderDone(state: ViewState): string {
  const badge = `<span class="elapsed-badge">${state.elapsedMs} ms</span>`;
  if (state.rows.length === 0) {
    return `<p class="hint">No numerals found.</p>${badge}`;
  }
  const body = state.rows
    .map((row) => {
      const cls = row.label === "in_claim" ? ' class="in-claim"' : "";
      return (
        `<tr${cls}><td>${escapeHtml(row.numeral)}</td>` +
        `<td>${row.label}</td>` +
        `<td>${row.probability.toFixed(4)}</td></tr>`
      );
    })
    .join("");
  return (
    '<table class="results"><thead>' +
    "<tr><th>numeral</th><th>verdict</th><th>probability</th></tr>" +
    `</thead><tbody>${body}</tbody></table>${badge}`
  );
}
