/** Wire types of the analysis service, kept verbatim. */

export type Verdict = "in_claim" | "out_of_claim";

export interface AnalyzeRow {
  numeral: string;
  start: number;
  end: number;
  label: Verdict;
  probability: number;
}

export interface AnalyzeResponse {
  rows: AnalyzeRow[];
  elapsed_ms: number;
  model: string;
}
