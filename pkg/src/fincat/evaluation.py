"""Labeled-dataset loading and micro/macro F1 evaluation.

Datasets are JSON-Lines: one object per line with keys ``record_id``,
``paragraph``, ``target_offset_start``, ``target_offset_end`` and
``claim`` (0/1). The target span must contain a digit and lie inside a
single whitespace token; a span that does not is a data error, never
silently repaired.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .classifier import ClaimLabel, LogisticModel, classify
from .embedding import EmbeddingProvider
from .errors import (
    DatasetError,
    EmbedderMismatchError,
    EmbeddingFailedError,
    FincatError,
)
from .extraction import (
    DEFAULT_WINDOW_HALF_WIDTH,
    NumeralMention,
    Token,
    context_window,
    find_numerals,
    tokenize,
)


@dataclass(frozen=True)
class DatasetRecord:
    """One labeled target numeral inside a paragraph."""

    record_id: str
    paragraph: str
    target_offset_start: int
    target_offset_end: int
    label: ClaimLabel

    def __post_init__(self):
        s, e = self.target_offset_start, self.target_offset_end
        if not (0 <= s < e <= len(self.paragraph)):
            raise ValueError(
                f"target offsets [{s}, {e}) out of range for a "
                f"{len(self.paragraph)}-char paragraph"
            )
        if not any(ch.isdecimal() for ch in self.paragraph[s:e]):
            raise ValueError(f"target span {self.paragraph[s:e]!r} contains no digit")


@dataclass(frozen=True)
class SkippedRecord:
    """A record evaluate could not align to a token, with the reason."""

    record_id: str
    reason: str


@dataclass(frozen=True)
class EvalReport:
    """Confusion counts and F1 metrics with in-claim as the positive class."""

    n: int
    tp: int
    fp: int
    tn: int
    fn: int
    f1_micro: float
    f1_macro: float
    f1_in_claim: float
    f1_out_of_claim: float

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "confusion": {"tp": self.tp, "fp": self.fp, "tn": self.tn, "fn": self.fn},
            "f1_micro": self.f1_micro,
            "f1_macro": self.f1_macro,
            "per_class_f1": {
                "in_claim": self.f1_in_claim,
                "out_of_claim": self.f1_out_of_claim,
            },
        }


def _f1(tp: int, fp: int, fn: int) -> float:
    # 2PR/(P+R) written over counts; 0/0 is defined as 0.
    denom = 2 * tp + fp + fn
    if denom == 0:
        return 0.0
    return 2 * tp / denom


def f1_scores(predictions: list[ClaimLabel], gold: list[ClaimLabel]) -> EvalReport:
    """Per-class, macro, and micro F1 over paired label lists.

    Macro is the unweighted mean of the two class F1s; micro pools the
    per-class counts, which for single-label binary data equals accuracy.
    """
    if len(predictions) != len(gold):
        raise ValueError(f"{len(predictions)} predictions vs {len(gold)} gold labels")
    if not predictions:
        raise ValueError("cannot score an empty prediction list")
    tp = fp = tn = fn = 0
    for p, g in zip(predictions, gold):
        p, g = ClaimLabel(p), ClaimLabel(g)
        if p is ClaimLabel.IN_CLAIM:
            if g is ClaimLabel.IN_CLAIM:
                tp += 1
            else:
                fp += 1
        else:
            if g is ClaimLabel.IN_CLAIM:
                fn += 1
            else:
                tn += 1
    f1_pos = _f1(tp, fp, fn)
    f1_neg = _f1(tn, fn, fp)
    # Pooled counts across both classes: TP = tp+tn, FP = FN = fp+fn.
    f1_micro = _f1(tp + tn, fp + fn, fp + fn)
    return EvalReport(
        n=len(predictions),
        tp=tp,
        fp=fp,
        tn=tn,
        fn=fn,
        f1_micro=f1_micro,
        f1_macro=(f1_pos + f1_neg) / 2.0,
        f1_in_claim=f1_pos,
        f1_out_of_claim=f1_neg,
    )


def load_dataset(path: str) -> list[DatasetRecord]:
    """Parse and validate a JSONL dataset file, preserving record order."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise DatasetError(f"cannot read dataset {path!r}: {exc}") from exc
    records: list[DatasetRecord] = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            doc = json.loads(line)
        except json.JSONDecodeError as exc:
            raise DatasetError(f"invalid JSON: {exc}", line=lineno) from None
        if not isinstance(doc, dict):
            raise DatasetError("record must be a JSON object", line=lineno)
        try:
            record = DatasetRecord(
                record_id=str(doc["record_id"]),
                paragraph=doc["paragraph"],
                target_offset_start=int(doc["target_offset_start"]),
                target_offset_end=int(doc["target_offset_end"]),
                label=ClaimLabel(int(doc["claim"])),
            )
        except KeyError as exc:
            raise DatasetError(f"missing key {exc}", line=lineno) from None
        except (TypeError, ValueError) as exc:
            raise DatasetError(str(exc), line=lineno) from None
        if not isinstance(record.paragraph, str):
            raise DatasetError("paragraph must be a string", line=lineno)
        records.append(record)
    return records


def align_mention(record: DatasetRecord) -> tuple[list[Token], NumeralMention]:
    """Map the record's char span to its whitespace token and mention.

    The span must lie inside exactly one token; raises ValueError when it
    straddles a boundary or falls outside every token.
    """
    tokens = tokenize(record.paragraph)
    s, e = record.target_offset_start, record.target_offset_end
    token = next(
        (t for t in tokens if t.char_start <= s and e <= t.char_end), None
    )
    if token is None:
        raise ValueError(
            f"target span [{s}, {e}) ({record.paragraph[s:e]!r}) does not lie "
            "inside a single whitespace token"
        )
    mention = next((m for m in find_numerals(tokens) if m.token == token), None)
    if mention is None:
        raise ValueError(f"token {token.surface!r} at the target span has no digit")
    return tokens, mention


def embed_records(
    provider: EmbeddingProvider,
    records: list[DatasetRecord],
    k: int = DEFAULT_WINDOW_HALF_WIDTH,
) -> tuple[list, list[ClaimLabel], list[SkippedRecord]]:
    """Embed each record's target window; returns (vectors, labels, skipped).

    Records whose span cannot be aligned are collected (not silently
    dropped); embedding failures abort the run with the failing record
    named.
    """
    if not records:
        raise ValueError("record list is empty")
    vectors = []
    labels: list[ClaimLabel] = []
    skipped: list[SkippedRecord] = []
    for record in records:
        try:
            tokens, mention = align_mention(record)
        except ValueError as exc:
            skipped.append(SkippedRecord(record.record_id, str(exc)))
            continue
        window = context_window(tokens, mention, k)
        try:
            vector = provider.embed(window, key=(record.record_id, mention.mention_id))
        except FincatError as exc:
            raise EmbeddingFailedError(
                f"embedding failed for record {record.record_id!r} "
                f"(mention {mention.mention_id}): {exc}"
            ) from exc
        vectors.append(vector)
        labels.append(record.label)
    if not vectors:
        raise DatasetError("every record failed span-to-token alignment")
    return vectors, labels, skipped


def evaluate(
    model: LogisticModel,
    provider: EmbeddingProvider,
    records: list[DatasetRecord],
    k: int = DEFAULT_WINDOW_HALF_WIDTH,
) -> tuple[EvalReport, list[SkippedRecord]]:
    """Run the full pipeline over records and score against gold labels.

    Deterministic; aggregation follows record order, never completion
    order.
    """
    if not records:
        raise ValueError("cannot evaluate an empty record list")
    if not model.embedder.compatible_with(provider.embedder_id):
        raise EmbedderMismatchError(
            f"model was trained for embedder {model.embedder}, "
            f"provider is {provider.embedder_id}"
        )
    vectors, gold, skipped = embed_records(provider, records, k)
    predictions = [classify(model, vector).label for vector in vectors]
    return f1_scores(predictions, gold), skipped


def render_report(report: EvalReport, skipped: list[SkippedRecord] | None = None) -> str:
    """Aligned text rendering for terminal output."""
    rows = [
        ("records", str(report.n)),
        ("tp / fp / tn / fn", f"{report.tp} / {report.fp} / {report.tn} / {report.fn}"),
        ("F1 micro", f"{report.f1_micro:.4f}"),
        ("F1 macro", f"{report.f1_macro:.4f}"),
        ("F1 in-claim", f"{report.f1_in_claim:.4f}"),
        ("F1 out-of-claim", f"{report.f1_out_of_claim:.4f}"),
    ]
    if skipped:
        rows.append(("skipped records", str(len(skipped))))
    width = max(len(name) for name, _ in rows)
    lines = [f"{name:<{width}}  {value}" for name, value in rows]
    if skipped:
        lines += [f"  skipped {s.record_id}: {s.reason}" for s in skipped]
    return "\n".join(lines)
