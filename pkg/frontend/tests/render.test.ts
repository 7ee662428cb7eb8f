import { describe, expect, it } from "vitest";
import { escapeHtml, renderResult } from "../src/render.js";
import type { ViewState } from "../src/viewmodel.js";

function state(patch: Partial<ViewState>): ViewState {
  return {
    inputText: "",
    rows: [],
    elapsedMs: 0,
    model: "",
    status: "idle",
    errorMessage: "",
    ...patch,
  };
}

describe("renderResult", () => {
  it("renders rows in service order with 4-decimal probabilities", () => {
    const html = renderResult(
      state({
        status: "done",
        elapsedMs: 3,
        rows: [
          { numeral: "12%", start: 0, end: 3, label: "in_claim", probability: 0.94712 },
          { numeral: "9.8%", start: 10, end: 14, label: "out_of_claim", probability: 0.1 },
        ],
      })
    );
    expect(html).toContain("<td>12%</td>");
    expect(html).toContain("<td>0.9471</td>");
    expect(html).toContain("<td>0.1000</td>");
    expect(html.indexOf("12%")).toBeLessThan(html.indexOf("9.8%"));
  });

  it("highlights in-claim rows only", () => {
    const html = renderResult(
      state({
        status: "done",
        rows: [
          { numeral: "12%", start: 0, end: 3, label: "in_claim", probability: 0.9 },
          { numeral: "42", start: 5, end: 7, label: "out_of_claim", probability: 0.2 },
        ],
      })
    );
    const rows = html.match(/<tr[^>]*><td>/g) ?? [];
    expect(rows).toHaveLength(2);
    expect(rows[0]).toContain('class="in-claim"');
    expect(rows[1]).not.toContain("in-claim");
  });

  it("shows the elapsed badge", () => {
    const html = renderResult(state({ status: "done", elapsedMs: 12 }));
    expect(html).toContain('<span class="elapsed-badge">12 ms</span>');
  });

  it("says so when no numerals were found", () => {
    const html = renderResult(state({ status: "done", rows: [], elapsedMs: 1 }));
    expect(html).toContain("No numerals found");
    expect(html).toContain("elapsed-badge");
  });

  it("renders the error banner", () => {
    const html = renderResult(
      state({ status: "error", errorMessage: "service unreachable: refused" })
    );
    expect(html).toContain("error-banner");
    expect(html).toContain("service unreachable: refused");
  });

  it("renders idle and loading placeholders", () => {
    expect(renderResult(state({}))).toContain("Paste a sentence");
    expect(renderResult(state({ status: "loading" }))).toContain("Analyzing");
  });

  it("escapes markup coming from the analyzed text", () => {
    const html = renderResult(
      state({
        status: "done",
        rows: [
          {
            numeral: '<img src=x onerror=alert(1)>2',
            start: 0,
            end: 1,
            label: "out_of_claim",
            probability: 0.5,
          },
        ],
      })
    );
    expect(html).not.toContain("<img");
    expect(html).toContain("&lt;img");
  });

  it("escapes markup in error messages", () => {
    const html = renderResult(
      state({ status: "error", errorMessage: '<script>alert("x")</script>' })
    );
    expect(html).not.toContain("<script>");
  });
});

describe("escapeHtml", () => {
  it("escapes the four HTML metacharacters", () => {
    expect(escapeHtml('<a href="x">&</a>')).toBe(
      "&lt;a href=&quot;x&quot;&gt;&amp;&lt;/a&gt;"
    );
  });
});
