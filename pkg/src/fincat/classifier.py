"""Logistic regression over context embeddings.

Training minimizes mean binary cross-entropy plus an L2 penalty on the
weights (bias unregularized) by full-batch gradient descent from zero
init. Everything is deterministic: identical inputs and hyperparameters
give a bit-identical model, and the saved JSON round-trips floats
exactly.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .embedding import EmbedderId
from .errors import ModelFormatError

MODEL_FORMAT_VERSION = 1

# Smallest/largest float64 strictly inside (0, 1): probabilities are
# clamped here so extreme scores never collapse to 0 or 1.
_P_MIN = float(np.nextafter(0.0, 1.0))
_P_MAX = float(np.nextafter(1.0, 0.0))


class ClaimLabel(enum.IntEnum):
    """Binary verdict for a numeral; encodes to 1 (in-claim) / 0 (out-of-claim)."""

    OUT_OF_CLAIM = 0
    IN_CLAIM = 1

    @property
    def wire_name(self) -> str:
        return "in_claim" if self is ClaimLabel.IN_CLAIM else "out_of_claim"

    @classmethod
    def from_wire(cls, name: str) -> ClaimLabel:
        try:
            return {"in_claim": cls.IN_CLAIM, "out_of_claim": cls.OUT_OF_CLAIM}[name]
        except KeyError:
            raise ValueError(f"unknown claim label {name!r}") from None


@dataclass(frozen=True)
class Prediction:
    label: ClaimLabel
    probability: float


@dataclass(frozen=True)
class TrainConfig:
    """Hyperparameters for ``train``; the defaults suit ~10k x 768 data."""

    l2_lambda: float = 1e-4
    learning_rate: float = 0.1
    max_epochs: int = 500
    tolerance: float = 1e-7
    seed: int = 0
    # Optional loss weight per class, e.g. {ClaimLabel.IN_CLAIM: 4.0}.
    # Off by default; missing classes weigh 1.0.
    class_weight: dict[ClaimLabel, float] | None = None


@dataclass
class LogisticModel:
    """Trained weights plus everything needed to reuse them safely.

    Immutable by convention after training; scoring never mutates it.
    ``loss_history`` is kept for diagnostics only and is not persisted.
    """

    weights: np.ndarray
    bias: float
    dim: int
    threshold: float
    embedder: EmbedderId
    train_meta: dict
    loss_history: list[float] | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=np.float64)
        if self.weights.shape != (self.dim,):
            raise ValueError(f"expected {self.dim} weights, got shape {self.weights.shape}")
        if not np.all(np.isfinite(self.weights)) or not math.isfinite(self.bias):
            raise ValueError("model parameters must be finite")
        if not 0.0 < self.threshold < 1.0:
            raise ValueError(f"threshold must lie in (0, 1), got {self.threshold}")

    def __eq__(self, other):
        if not isinstance(other, LogisticModel):
            return NotImplemented
        return (
            np.array_equal(self.weights, other.weights)
            and self.bias == other.bias
            and self.dim == other.dim
            and self.threshold == other.threshold
            and self.embedder == other.embedder
            and self.train_meta == other.train_meta
        )


def _as_matrix(features, dim: int | None = None) -> np.ndarray:
    x = np.asarray(features, dtype=np.float64)
    if x.ndim == 1:
        x = x.reshape(1, -1)
    if x.ndim != 2:
        raise ValueError(f"features must form an (n, dim) matrix, got ndim={x.ndim}")
    if dim is not None and x.shape[1] != dim:
        raise ValueError(f"feature dim {x.shape[1]} does not match expected {dim}")
    if not np.all(np.isfinite(x)):
        raise ValueError("features contain non-finite values")
    return x


def _as_label_array(labels) -> np.ndarray:
    try:
        y = np.array([int(ClaimLabel(v)) for v in labels], dtype=np.float64)
    except ValueError:
        raise ValueError("labels must be ClaimLabel values (or their 0/1 encodings)") from None
    return y


def _example_weights(y: np.ndarray, class_weight: dict[ClaimLabel, float] | None) -> np.ndarray | None:
    if class_weight is None:
        return None
    w0 = float(class_weight.get(ClaimLabel.OUT_OF_CLAIM, 1.0))
    w1 = float(class_weight.get(ClaimLabel.IN_CLAIM, 1.0))
    return np.where(y == 1.0, w1, w0)


def loss_and_gradient(
    weights: np.ndarray,
    bias: float,
    features,
    labels,
    l2_lambda: float = 0.0,
    class_weight: dict[ClaimLabel, float] | None = None,
) -> tuple[float, np.ndarray, float]:
    """Mean binary cross-entropy + (l2/2)||w||^2 with exact analytic gradients.

    The bias is never regularized. Per-example terms are computed with
    logaddexp, so large |w.x + b| cannot overflow.
    """
    w = np.asarray(weights, dtype=np.float64)
    x = _as_matrix(features, dim=w.shape[0])
    y = _as_label_array(labels)
    if x.shape[0] != y.shape[0]:
        raise ValueError(f"{x.shape[0]} feature rows vs {y.shape[0]} labels")
    n = x.shape[0]
    z = x @ w + bias
    # -[y ln p + (1-y) ln(1-p)] == y*log(1+e^-z) + (1-y)*log(1+e^z)
    per_example = y * np.logaddexp(0.0, -z) + (1.0 - y) * np.logaddexp(0.0, z)
    p = _sigmoid(z)
    residual = p - y
    cw = _example_weights(y, class_weight)
    if cw is not None:
        per_example = cw * per_example
        residual = cw * residual
    loss = float(np.mean(per_example) + 0.5 * l2_lambda * float(w @ w))
    grad_w = x.T @ residual / n + l2_lambda * w
    grad_b = float(np.mean(residual))
    return loss, grad_w, grad_b


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def train(
    features,
    labels,
    embedder: EmbedderId,
    config: TrainConfig = TrainConfig(),
    threshold: float = 0.5,
) -> LogisticModel:
    """Fit by full-batch gradient descent from w=0, b=0.

    Stops after ``max_epochs`` steps or as soon as the loss decrease over
    one epoch falls below ``tolerance``. Both classes need not be
    present. Fully deterministic given inputs and config.
    """
    x = _as_matrix(features, dim=embedder.dim)
    y = _as_label_array(labels)
    if x.shape[0] != y.shape[0]:
        raise ValueError(f"{x.shape[0]} feature rows vs {y.shape[0]} labels")
    if x.shape[0] == 0:
        raise ValueError("cannot train on an empty dataset")
    if config.max_epochs < 0:
        raise ValueError("max_epochs must be >= 0")

    dim = x.shape[1]
    w = np.zeros(dim, dtype=np.float64)
    b = 0.0
    loss, grad_w, grad_b = loss_and_gradient(
        w, b, x, y, config.l2_lambda, config.class_weight
    )
    history = [loss]
    epochs_run = 0
    for _ in range(config.max_epochs):
        w = w - config.learning_rate * grad_w
        b = b - config.learning_rate * grad_b
        new_loss, grad_w, grad_b = loss_and_gradient(
            w, b, x, y, config.l2_lambda, config.class_weight
        )
        epochs_run += 1
        history.append(new_loss)
        decreased_by = loss - new_loss
        loss = new_loss
        if decreased_by < config.tolerance:
            break

    return LogisticModel(
        weights=w,
        bias=b,
        dim=dim,
        threshold=threshold,
        embedder=embedder,
        train_meta={
            "l2_lambda": config.l2_lambda,
            "learning_rate": config.learning_rate,
            "epochs_run": epochs_run,
            "final_loss": loss,
            "seed": config.seed,
        },
        loss_history=history,
    )


def score(model: LogisticModel, x) -> float:
    """sigma(w.x + b), clamped strictly inside (0, 1).

    Stable for |w.x + b| up to at least 1e3: extreme negatives return a
    tiny positive value and extreme positives stay below 1.
    """
    vec = np.asarray(x, dtype=np.float64)
    if vec.shape != (model.dim,):
        raise ValueError(f"expected a vector of dim {model.dim}, got shape {vec.shape}")
    if not np.all(np.isfinite(vec)):
        raise ValueError("cannot score a non-finite vector")
    z = float(model.weights @ vec) + model.bias
    # exp is only ever taken of a non-positive argument, so no overflow;
    # underflow to 0.0 is caught by the clamp.
    if z >= 0:
        p = 1.0 / (1.0 + math.exp(-z))
    else:
        ez = math.exp(z)
        p = ez / (1.0 + ez)
    return min(max(p, _P_MIN), _P_MAX)


def classify(model: LogisticModel, x) -> Prediction:
    """Thresholded verdict: in-claim iff the score strictly exceeds threshold.

    A score exactly at the threshold stays out-of-claim: a tie is not
    evidence of a claim.
    """
    p = score(model, x)
    label = ClaimLabel.IN_CLAIM if p > model.threshold else ClaimLabel.OUT_OF_CLAIM
    return Prediction(label=label, probability=p)


def model_to_json(model: LogisticModel) -> str:
    """Canonical serialization: sorted keys, shortest round-trip floats."""
    doc = {
        "format_version": MODEL_FORMAT_VERSION,
        "dim": model.dim,
        "threshold": model.threshold,
        "bias": model.bias,
        "weights": [float(v) for v in model.weights],
        "embedder": model.embedder.to_dict(),
        "train_meta": model.train_meta,
    }
    return json.dumps(doc, sort_keys=True, allow_nan=False) + "\n"


def save_model(model: LogisticModel, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(model_to_json(model))


def load_model(path: str) -> LogisticModel:
    """Read a model file; load(save(m)) reproduces m bit-exactly."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ModelFormatError(f"cannot read model file {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"model file {path!r} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ModelFormatError(f"model file {path!r} must hold a JSON object")
    version = doc.get("format_version")
    if version != MODEL_FORMAT_VERSION:
        raise ModelFormatError(
            f"unsupported format_version {version!r} (expected {MODEL_FORMAT_VERSION}); "
            "upgrade this package to read newer model files"
        )
    try:
        dim = doc["dim"]
        weights = doc["weights"]
        model = LogisticModel(
            weights=np.asarray(weights, dtype=np.float64),
            bias=float(doc["bias"]),
            dim=int(dim),
            threshold=float(doc["threshold"]),
            embedder=EmbedderId.from_dict(doc["embedder"]),
            train_meta=dict(doc["train_meta"]),
        )
    except KeyError as exc:
        raise ModelFormatError(f"model file {path!r} is missing key {exc}") from None
    except (TypeError, ValueError) as exc:
        raise ModelFormatError(f"model file {path!r} is inconsistent: {exc}") from None
    return model
