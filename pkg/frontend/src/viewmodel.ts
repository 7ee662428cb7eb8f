import type { AnalyzeResponse, AnalyzeRow } from "./types.js";

export type Status = "idle" | "loading" | "done" | "error";

export interface ViewState {
  inputText: string;
  rows: AnalyzeRow[];
  elapsedMs: number;
  model: string;
  status: Status;
  errorMessage: string;
}

export type AnalyzeFn = (text: string) => Promise<AnalyzeResponse>;
export type Listener = (state: ViewState) => void;

export const EMPTY_INPUT_MESSAGE = "Enter some text to analyze.";

const INITIAL: ViewState = {
  inputText: "",
  rows: [],
  elapsedMs: 0,
  model: "",
  status: "idle",
  errorMessage: "",
};

/**
 * State container for the analysis page.
 *
 * Invariants: rows are nonempty only in status "done"; errorMessage is
 * nonempty only in status "error". At most one submission counts at a
 * time: each submit takes a token, and a response whose token is no
 * longer current (superseded by a later submit or a clear) is dropped.
 */
export class AnalysisStore {
  private state: ViewState = INITIAL;
  private listeners: Listener[] = [];
  private requestToken = 0;

  constructor(private analyze: AnalyzeFn) {}

  getState(): ViewState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private set(patch: Partial<ViewState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  setInput(text: string): void {
    this.set({ inputText: text });
  }

  async submit(): Promise<void> {
    const text = this.state.inputText;
    if (text.trim() === "") {
      this.set({ status: "error", errorMessage: EMPTY_INPUT_MESSAGE, rows: [] });
      return;
    }
    const token = ++this.requestToken;
    this.set({ status: "loading", rows: [], errorMessage: "" });
    let response: AnalyzeResponse;
    try {
      response = await this.analyze(text);
    } catch (err) {
      if (token !== this.requestToken) return; // superseded
      const message = err instanceof Error ? err.message : String(err);
      this.set({ status: "error", errorMessage: message, rows: [] });
      return;
    }
    if (token !== this.requestToken) return; // superseded
    this.set({
      status: "done",
      rows: response.rows,
      elapsedMs: response.elapsed_ms,
      model: response.model,
      errorMessage: "",
    });
  }

  clear(): void {
    this.requestToken += 1; // any in-flight response is now stale
    this.set(INITIAL);
  }
}
