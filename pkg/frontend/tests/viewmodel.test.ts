import { describe, expect, it } from "vitest";
import { AnalysisStore, EMPTY_INPUT_MESSAGE, ViewState } from "../src/viewmodel.js";
import type { AnalyzeResponse } from "../src/types.js";

const RESPONSE: AnalyzeResponse = {
  rows: [{ numeral: "12%", start: 5, end: 8, label: "in_claim", probability: 0.9 }],
  elapsed_ms: 7,
  model: "fp16",
};

interface Deferred {
  resolve: (value: AnalyzeResponse) => void;
  reject: (err: Error) => void;
}

/** Analyze stub whose promises are settled manually by the test. */
function deferredAnalyze(): { analyze: (text: string) => Promise<AnalyzeResponse>; calls: Deferred[] } {
  const calls: Deferred[] = [];
  return {
    calls,
    analyze: () =>
      new Promise<AnalyzeResponse>((resolve, reject) => {
        calls.push({ resolve, reject });
      }),
  };
}

function assertInvariants(state: ViewState): void {
  if (state.rows.length > 0) expect(state.status).toBe("done");
  if (state.errorMessage !== "") expect(state.status).toBe("error");
}

describe("AnalysisStore", () => {
  it("starts idle and empty", () => {
    const store = new AnalysisStore(async () => RESPONSE);
    expect(store.getState()).toEqual({
      inputText: "",
      rows: [],
      elapsedMs: 0,
      model: "",
      status: "idle",
      errorMessage: "",
    });
  });

  it("setInput only changes the text", () => {
    const store = new AnalysisStore(async () => RESPONSE);
    store.setInput("grew 12%");
    expect(store.getState().inputText).toBe("grew 12%");
    expect(store.getState().status).toBe("idle");
  });

  it("empty input is rejected client-side without a request", async () => {
    let called = 0;
    const store = new AnalysisStore(async () => {
      called += 1;
      return RESPONSE;
    });
    await store.submit();
    expect(called).toBe(0);
    expect(store.getState().status).toBe("error");
    expect(store.getState().errorMessage).toBe(EMPTY_INPUT_MESSAGE);

    store.setInput("   \n  ");
    await store.submit();
    expect(called).toBe(0);
  });

  it("submit goes loading then done with the service rows", async () => {
    const { analyze, calls } = deferredAnalyze();
    const store = new AnalysisStore(analyze);
    const seen: ViewState[] = [];
    store.subscribe((s) => {
      seen.push(s);
      assertInvariants(s);
    });

    store.setInput("revenue grew 12%");
    const submission = store.submit();
    expect(store.getState().status).toBe("loading");
    expect(store.getState().rows).toEqual([]);

    calls[0]!.resolve(RESPONSE);
    await submission;

    const state = store.getState();
    expect(state.status).toBe("done");
    expect(state.rows).toEqual(RESPONSE.rows);
    expect(state.elapsedMs).toBe(7);
    expect(state.model).toBe("fp16");
    expect(state.inputText).toBe("revenue grew 12%");
    expect(seen.some((s) => s.status === "loading")).toBe(true);
  });

  it("a failed request enters the error state and preserves the input", async () => {
    const { analyze, calls } = deferredAnalyze();
    const store = new AnalysisStore(analyze);
    store.setInput("grew 12%");
    const submission = store.submit();
    calls[0]!.reject(new Error("service unreachable: connect ECONNREFUSED"));
    await submission;

    const state = store.getState();
    expect(state.status).toBe("error");
    expect(state.errorMessage).toMatch(/unreachable/);
    expect(state.inputText).toBe("grew 12%");
    expect(state.rows).toEqual([]);
  });

  it("a resubmit supersedes the in-flight request", async () => {
    const { analyze, calls } = deferredAnalyze();
    const store = new AnalysisStore(analyze);
    store.setInput("first");
    const first = store.submit();
    store.setInput("second");
    const second = store.submit();

    // The stale response arrives after the fresh one; it must be dropped.
    calls[1]!.resolve(RESPONSE);
    await second;
    calls[0]!.resolve({ rows: [], elapsed_ms: 99, model: "stale" });
    await first;

    expect(store.getState().status).toBe("done");
    expect(store.getState().model).toBe("fp16");
    expect(store.getState().elapsedMs).toBe(7);
  });

  it("a stale response arriving while the new one is pending is ignored", async () => {
    const { analyze, calls } = deferredAnalyze();
    const store = new AnalysisStore(analyze);
    store.setInput("first");
    const first = store.submit();
    store.setInput("second");
    void store.submit();

    calls[0]!.resolve({ rows: [], elapsed_ms: 99, model: "stale" });
    await first;
    expect(store.getState().status).toBe("loading");
  });

  it("a stale failure is also dropped", async () => {
    const { analyze, calls } = deferredAnalyze();
    const store = new AnalysisStore(analyze);
    store.setInput("first");
    const first = store.submit();
    store.setInput("second");
    const second = store.submit();

    calls[0]!.reject(new Error("boom"));
    await first;
    expect(store.getState().status).toBe("loading");

    calls[1]!.resolve(RESPONSE);
    await second;
    expect(store.getState().status).toBe("done");
  });

  it("clear after done returns to the idle empty state", async () => {
    const store = new AnalysisStore(async () => RESPONSE);
    store.setInput("grew 12%");
    await store.submit();
    expect(store.getState().status).toBe("done");

    store.clear();
    expect(store.getState()).toEqual({
      inputText: "",
      rows: [],
      elapsedMs: 0,
      model: "",
      status: "idle",
      errorMessage: "",
    });
  });

  it("clear when already idle is a no-op", () => {
    const store = new AnalysisStore(async () => RESPONSE);
    const before = store.getState();
    store.clear();
    expect(store.getState()).toEqual(before);
  });

  it("clear during loading discards the result when it arrives", async () => {
    const { analyze, calls } = deferredAnalyze();
    const store = new AnalysisStore(analyze);
    store.setInput("grew 12%");
    const submission = store.submit();
    expect(store.getState().status).toBe("loading");

    store.clear();
    expect(store.getState().status).toBe("idle");

    calls[0]!.resolve(RESPONSE);
    await submission;
    expect(store.getState().status).toBe("idle");
    expect(store.getState().rows).toEqual([]);
  });

  it("notifies subscribers and honors unsubscribe", () => {
    const store = new AnalysisStore(async () => RESPONSE);
    let notifications = 0;
    const unsubscribe = store.subscribe(() => {
      notifications += 1;
    });
    store.setInput("a");
    expect(notifications).toBe(1);
    unsubscribe();
    store.setInput("b");
    expect(notifications).toBe(1);
  });

  it("invariants hold across a full submit/error/clear cycle", async () => {
    const { analyze, calls } = deferredAnalyze();
    const store = new AnalysisStore(analyze);
    store.subscribe(assertInvariants);

    store.setInput("grew 12%");
    let submission = store.submit();
    calls[0]!.resolve(RESPONSE);
    await submission;

    submission = store.submit();
    calls[1]!.reject(new Error("down"));
    await submission;

    store.clear();
    expect(store.getState().status).toBe("idle");
  });
});
