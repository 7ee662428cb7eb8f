"""Command-line interface: train, predict, evaluate, serve.

Exit codes: 0 success, 1 usage error, 2 data/model error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .classifier import LogisticModel, TrainConfig, load_model, save_model, train
from .embedding import (
    DEFAULT_DIM,
    CachedEmbedder,
    EmbeddingProvider,
    HashedEmbedder,
    RemoteEmbedder,
)
from .errors import FincatError
from .evaluation import embed_records, evaluate, load_dataset, render_report
from .extraction import DEFAULT_WINDOW_HALF_WIDTH
from .pipeline import AnalysisResult, analyze
from .service import ServeConfig, serve

ENDPOINT_ENV_VAR = "FINCAT_EMBED_ENDPOINT"


class UsageError(Exception):
    """Bad flag combination discovered after parsing; exits 1."""


class _Parser(argparse.ArgumentParser):
    # Spec'd exit codes: argparse defaults to 2 for usage errors, we use 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_provider_flags(parser: argparse.ArgumentParser, for_train: bool) -> None:
    parser.add_argument(
        "--embedder",
        required=True,
        choices=["hashed", "remote", "cached"],
        help="embedding backend",
    )
    if for_train:
        parser.add_argument("--seed", type=int, default=0, help="hashed embedder seed")
        parser.add_argument("--dim", type=int, default=DEFAULT_DIM, help="embedding dimension")
    else:
        # Default to the loaded model's embedder configuration.
        parser.add_argument("--seed", type=int, default=None, help="hashed embedder seed override")
        parser.add_argument("--dim", type=int, default=None, help="embedding dimension override")
    parser.add_argument("--cache", help="embedding cache file (required for --embedder cached)")
    parser.add_argument(
        "--endpoint",
        help=f"remote provider base URL (overridden by ${ENDPOINT_ENV_VAR} when set)",
    )
    parser.add_argument(
        "--k",
        type=int,
        default=DEFAULT_WINDOW_HALF_WIDTH,
        help="context window half-width in words",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fincat", description="in-claim vs out-of-claim numeral analysis")
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", help="fit a model on a labeled JSONL dataset")
    p_train.add_argument("--data", required=True, help="training dataset (JSONL)")
    _add_provider_flags(p_train, for_train=True)
    p_train.add_argument("--l2", type=float, default=1e-4, help="L2 penalty on the weights")
    p_train.add_argument("--lr", type=float, default=0.1, help="gradient descent learning rate")
    p_train.add_argument("--epochs", type=int, default=500, help="maximum full-batch epochs")
    p_train.add_argument("--out", default="model.json", help="where to write the model")
    p_train.set_defaults(func=_cmd_train)

    p_predict = sub.add_parser("predict", help="score the numerals in a text")
    p_predict.add_argument("--model", required=True, help="model file")
    _add_provider_flags(p_predict, for_train=False)
    source = p_predict.add_mutually_exclusive_group(required=True)
    source.add_argument("--text", help="text to analyze")
    source.add_argument("--input", help="file whose contents to analyze")
    p_predict.add_argument("--json", action="store_true", help="emit full-precision JSON")
    p_predict.set_defaults(func=_cmd_predict)

    p_eval = sub.add_parser("evaluate", help="score a model against a labeled dataset")
    p_eval.add_argument("--model", required=True, help="model file")
    p_eval.add_argument("--data", required=True, help="evaluation dataset (JSONL)")
    _add_provider_flags(p_eval, for_train=False)
    p_eval.add_argument("--report", help="also write the report as JSON to this path")
    p_eval.set_defaults(func=_cmd_evaluate)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--model", required=True, help="model file")
    _add_provider_flags(p_serve, for_train=False)
    p_serve.add_argument("--host", default="127.0.0.1", help="bind address")
    p_serve.add_argument("--port", type=int, default=8000, help="bind port")
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def _build_provider(args, model: LogisticModel | None = None) -> EmbeddingProvider:
    """Construct the provider named by --embedder.

    For commands that load a model, unspecified dim/seed/endpoint fall
    back to the model's own embedder identity, so the common case needs
    no extra flags.
    """
    model_id = model.embedder if model is not None else None
    dim = args.dim
    if dim is None:
        dim = model_id.dim if model_id is not None else DEFAULT_DIM

    if args.embedder == "hashed":
        seed = args.seed
        if seed is None:
            seed = model_id.seed if model_id is not None and model_id.kind == "hashed" else 0
        return HashedEmbedder(dim=dim, seed=seed)

    if args.embedder == "remote":
        endpoint = os.environ.get(ENDPOINT_ENV_VAR) or args.endpoint
        if endpoint is None and model_id is not None and model_id.kind == "remote":
            endpoint = model_id.endpoint
        if not endpoint:
            raise UsageError(
                f"--embedder remote needs an endpoint (--endpoint or ${ENDPOINT_ENV_VAR})"
            )
        return RemoteEmbedder(endpoint=endpoint, dim=dim)

    if args.cache is None:
        raise UsageError("--embedder cached requires --cache")
    return CachedEmbedder.from_file(args.cache)


def _cmd_train(args) -> int:
    records = load_dataset(args.data)
    provider = _build_provider(args)
    vectors, labels, skipped = embed_records(provider, records, args.k)
    for skip in skipped:
        print(f"fincat: skipping record {skip.record_id!r}: {skip.reason}", file=sys.stderr)
    config = TrainConfig(
        l2_lambda=args.l2,
        learning_rate=args.lr,
        max_epochs=args.epochs,
        seed=args.seed,
    )
    model = train(vectors, labels, provider.embedder_id, config)
    save_model(model, args.out)
    meta = model.train_meta
    print(
        f"trained on {len(vectors)} records "
        f"({meta['epochs_run']} epochs, final loss {meta['final_loss']:.6f}) -> {args.out}"
    )
    return 0


def _format_table(result: AnalysisResult) -> str:
    header = ("numeral", "verdict", "probability")
    body = [
        (row.numeral_surface, row.label.wire_name, f"{row.probability:.4f}")
        for row in result.rows
    ]
    widths = [
        max(len(header[i]), *(len(r[i]) for r in body)) if body else len(header[i])
        for i in range(3)
    ]
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(header)),
        "  ".join("-" * w for w in widths),
    ]
    lines += ["  ".join(r[i].ljust(widths[i]) for i in range(3)) for r in body]
    lines.append("")
    lines.append(f"elapsed: {result.elapsed_ms} ms  model: {result.model_fingerprint}")
    return "\n".join(lines)


def _cmd_predict(args) -> int:
    model = load_model(args.model)
    provider = _build_provider(args, model)
    if args.text is not None:
        text = args.text
    else:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    result = analyze(text, model, provider, args.k)
    if args.json:
        print(json.dumps(result.to_dict()))
    else:
        print(_format_table(result))
    return 0


def _cmd_evaluate(args) -> int:
    model = load_model(args.model)
    provider = _build_provider(args, model)
    records = load_dataset(args.data)
    report, skipped = evaluate(model, provider, records, args.k)
    print(render_report(report, skipped))
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(report.to_dict(), fh, sort_keys=True)
            fh.write("\n")
    return 0


def _cmd_serve(args) -> int:
    model = load_model(args.model)  # fail fast, before binding anything
    provider = _build_provider(args, model)
    serve(args.model, provider, ServeConfig(host=args.host, port=args.port, k=args.k))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 1
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"fincat: error: {exc}", file=sys.stderr)
        return 1
    except (FincatError, ValueError, OSError) as exc:
        print(f"fincat: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
