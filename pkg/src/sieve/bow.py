"""Bag-of-words selector: averaged embeddings scored by a small MLP.

Question and sentence are each encoded as the mean of their token
embeddings; the network sees [q; s; q*s] (the elementwise product is a
cheap interaction term) and outputs a sigmoid score. Training is
mini-batch gradient descent on binary cross-entropy, with sentence
labels derived by distant supervision: a sentence is positive iff a
normalized gold answer appears in it.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .corpus import EmbeddingTable, RetrievalBundle, Token
from .errors import TrainingError
from .metrics import contains_answer
from .modelio import load_params, save_params
from .selection import Selector


def _sigmoid(x):
    return 0.5 * (1.0 + np.tanh(0.5 * x))


def _bce_with_logits(logits, labels):
    # max(x, 0) - x*y + log(1 + exp(-|x|)), stable for large |x|
    return np.maximum(logits, 0.0) - logits * labels + np.log1p(np.exp(-np.abs(logits)))


@dataclass
class BowModel:
    """One hidden ReLU layer over [q; s; q*s], sigmoid output."""

    w1: np.ndarray  # (hidden, 3*dim)
    b1: np.ndarray  # (hidden,)
    w2: np.ndarray  # (hidden,)
    b2: float

    @property
    def dim(self) -> int:
        return self.w1.shape[1] // 3

    @property
    def hidden(self) -> int:
        return self.w1.shape[0]

    @classmethod
    def init(cls, dim: int, hidden: int, rng: np.random.Generator) -> "BowModel":
        return cls(
            w1=rng.uniform(-0.05, 0.05, size=(hidden, 3 * dim)),
            b1=rng.uniform(-0.05, 0.05, size=hidden),
            w2=rng.uniform(-0.05, 0.05, size=hidden),
            b2=float(rng.uniform(-0.05, 0.05)),
        )

    def save(self, path: str | Path) -> None:
        meta = {"dim": self.dim, "hidden": self.hidden}
        save_params(
            path,
            "bow",
            meta,
            [("w1", self.w1), ("b1", self.b1), ("w2", self.w2), ("b2", np.float64(self.b2))],
        )


def load_bow(path: str | Path) -> BowModel:
    _, _, arrays = load_params(path, expect_kind="bow")
    return BowModel(
        w1=arrays["w1"], b1=arrays["b1"], w2=arrays["w2"], b2=float(arrays["b2"])
    )


@dataclass
class BowTrainConfig:
    learning_rate: float = 0.05
    epochs: int = 5
    negatives_per_positive: int = 5
    seed: int = 0
    hidden: int = 100
    batch_size: int = 64

    def __post_init__(self) -> None:
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be > 0")
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")


def bow_encode(tokens: Iterable[Token], table: EmbeddingTable) -> np.ndarray:
    """Mean of the token embeddings; zero vector for an empty sequence."""
    vectors = [table.embed(t) for t in tokens]
    if not vectors:
        return np.zeros(table.dim)
    return np.mean(vectors, axis=0)


def features(q_vec: np.ndarray, s_vec: np.ndarray) -> np.ndarray:
    if q_vec.shape != s_vec.shape:
        raise ValueError(f"shape mismatch: {q_vec.shape} vs {s_vec.shape}")
    return np.concatenate([q_vec, s_vec, q_vec * s_vec])


def bow_score(q_vec: np.ndarray, s_vec: np.ndarray, model: BowModel) -> float:
    """Forward pass; strictly inside (0, 1)."""
    x = features(q_vec, s_vec)
    if x.shape[0] != model.w1.shape[1]:
        raise ValueError(
            f"feature length {x.shape[0]} does not match model input {model.w1.shape[1]}"
        )
    hidden = np.maximum(model.w1 @ x + model.b1, 0.0)
    return float(_sigmoid(model.w2 @ hidden + model.b2))


def loss_and_grads(model: BowModel, x: np.ndarray, y: np.ndarray):
    """Mean BCE over a batch plus analytic gradients for every parameter.

    x is (n, 3*dim), y is (n,) of 0/1 labels.
    """
    z1 = x @ model.w1.T + model.b1
    a1 = np.maximum(z1, 0.0)
    logits = a1 @ model.w2 + model.b2
    loss = float(np.mean(_bce_with_logits(logits, y)))

    n = x.shape[0]
    dlogits = (_sigmoid(logits) - y) / n
    gw2 = a1.T @ dlogits
    gb2 = float(np.sum(dlogits))
    da1 = np.outer(dlogits, model.w2)
    dz1 = da1 * (z1 > 0.0)
    gw1 = dz1.T @ x
    gb1 = dz1.sum(axis=0)
    return loss, {"w1": gw1, "b1": gb1, "w2": gw2, "b2": gb2}


def sentence_examples(
    bundles: Sequence[RetrievalBundle], table: EmbeddingTable
) -> tuple[np.ndarray, np.ndarray]:
    """Features and labels for every retrieved sentence of every bundle."""
    rows = []
    labels = []
    for bundle in bundles:
        q_vec = bow_encode(bundle.question.tokens, table)
        for _, sentence in bundle.sentences():
            rows.append(features(q_vec, bow_encode(sentence.tokens, table)))
            labels.append(
                1.0 if bundle.answers and contains_answer([sentence], bundle.answers) else 0.0
            )
    if not rows:
        return np.zeros((0, 3 * table.dim)), np.zeros(0)
    return np.stack(rows), np.asarray(labels)


def _training_matrix(
    bundles: Sequence[RetrievalBundle],
    table: EmbeddingTable,
    negatives_per_positive: int,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    rows = []
    labels = []
    for bundle in bundles:
        q_vec = bow_encode(bundle.question.tokens, table)
        positives = []
        negatives = []
        for _, sentence in bundle.sentences():
            feats = features(q_vec, bow_encode(sentence.tokens, table))
            if bundle.answers and contains_answer([sentence], bundle.answers):
                positives.append(feats)
            else:
                negatives.append(feats)
        if not positives:
            continue
        n_neg = min(len(negatives), negatives_per_positive * len(positives))
        chosen = rng.choice(len(negatives), size=n_neg, replace=False) if n_neg else []
        rows.extend(positives)
        labels.extend([1.0] * len(positives))
        for idx in sorted(chosen):
            rows.append(negatives[idx])
            labels.append(0.0)
    if not any(l == 1.0 for l in labels):
        raise TrainingError("no positive examples: no sentence contains a gold answer")
    return np.stack(rows), np.asarray(labels)


def train_bow(
    bundles: Sequence[RetrievalBundle], table: EmbeddingTable, config: BowTrainConfig
) -> tuple[BowModel, float]:
    """Train on labeled bundles; returns (model, final mean training loss).

    Deterministic for a fixed config.seed: initialization, negative
    sampling, and epoch shuffles all draw from one seeded generator.
    """
    rng = np.random.default_rng(config.seed)
    model = BowModel.init(table.dim, config.hidden, rng)
    x, y = _training_matrix(bundles, table, config.negatives_per_positive, rng)

    n = x.shape[0]
    loss = float("nan")
    for _ in range(config.epochs):
        order = rng.permutation(n)
        for start in range(0, n, config.batch_size):
            batch = order[start : start + config.batch_size]
            loss, grads = loss_and_grads(model, x[batch], y[batch])
            if not np.isfinite(loss):
                raise TrainingError(f"training diverged (loss={loss})")
            model.w1 -= config.learning_rate * grads["w1"]
            model.b1 -= config.learning_rate * grads["b1"]
            model.w2 -= config.learning_rate * grads["w2"]
            model.b2 -= config.learning_rate * grads["b2"]
    final_loss, _ = loss_and_grads(model, x, y)
    return model, final_loss


def bow_accuracy(
    model: BowModel, bundles: Sequence[RetrievalBundle], table: EmbeddingTable
) -> float:
    """Sentence-level accuracy at a 0.5 decision threshold."""
    x, y = sentence_examples(bundles, table)
    if x.shape[0] == 0:
        return 0.0
    z1 = np.maximum(x @ model.w1.T + model.b1, 0.0)
    p = _sigmoid(z1 @ model.w2 + model.b2)
    return float(np.mean((p > 0.5) == (y == 1.0)))


class BowSelector(Selector):
    """Scores sentences with a trained bag-of-words MLP."""

    name = "bow"

    def __init__(self, model: BowModel, table: EmbeddingTable):
        if model.dim != table.dim:
            raise ValueError(
                f"model dimension {model.dim} does not match table dimension {table.dim}"
            )
        self.model = model
        self.table = table

    def prepare(self, bundle: RetrievalBundle):
        return bow_encode(bundle.question.tokens, self.table)

    def score_sentence(self, bundle, doc, sentence_index, ctx) -> float:
        sentence = next(s for s in doc.sentences if s.sentence_index == sentence_index)
        return bow_score(ctx, bow_encode(sentence.tokens, self.table), self.model)
