"""Answer finding: is any constituent of a sentence a plausible answer?

Candidates are the sentence's parse constituents. Each candidate is
represented by averaged embeddings of its span plus four-word context
windows on either side, projected back to embedding size. The question
side is a gated recurrent encoding of the question prefix (tokens up to
the first named entity). A two-layer feed-forward network over

    [question; span; span * question; first-token emb; last-token emb]

produces a plausibility probability per candidate; the sentence score
is the binary "some candidate exceeds the threshold" bit.

Training uses distant supervision: in each answer-bearing sentence the
constituent with highest Jaccard similarity to a gold answer is the
positive, with 20 negatives sampled from the rest of the bundle, and
positive instances carry 5x loss weight.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .corpus import AnnotatedSentence, Document, EmbeddingTable, RetrievalBundle, Token
from .errors import TrainingError
from .metrics import contains_answer
from .modelio import load_params, save_params
from .selection import Selector

CONTEXT_WINDOW = 4
FALLBACK_PREFIX_LEN = 6
DEFAULT_THRESHOLD = 0.3
DEFAULT_NEGATIVES = 20


def _sigmoid(x):
    return 0.5 * (1.0 + np.tanh(0.5 * x))


def _bce_with_logit(logit: float, label: float) -> float:
    return max(logit, 0.0) - logit * label + np.log1p(np.exp(-abs(logit)))


@dataclass(frozen=True)
class Candidate:
    """Half-open token span [start, end) of one constituent."""

    start: int
    end: int


@dataclass
class AnsFindModel:
    """Gated recurrent question encoder, span projection, scoring FFNN."""

    # recurrent encoder, state size = embedding size
    gru_wz: np.ndarray
    gru_uz: np.ndarray
    gru_bz: np.ndarray
    gru_wr: np.ndarray
    gru_ur: np.ndarray
    gru_br: np.ndarray
    gru_wn: np.ndarray
    gru_un: np.ndarray
    gru_bn: np.ndarray
    # span projection (dim x 3*dim) and bias
    proj_w: np.ndarray
    proj_b: np.ndarray
    # two feed-forward layers over the 5*dim joint features
    ff1_w: np.ndarray
    ff1_b: np.ndarray
    ff2_w: np.ndarray
    ff2_b: np.ndarray
    # output vector; probability = sigmoid(out_v . ffnn(x))
    out_v: np.ndarray
    threshold: float = DEFAULT_THRESHOLD

    @property
    def dim(self) -> int:
        return self.gru_wz.shape[0]

    @property
    def hidden(self) -> int:
        return self.ff1_w.shape[0]

    @classmethod
    def init(
        cls,
        dim: int,
        hidden: int,
        rng: np.random.Generator,
        threshold: float = DEFAULT_THRESHOLD,
    ) -> "AnsFindModel":
        def u(*shape):
            return rng.uniform(-0.05, 0.05, size=shape)

        return cls(
            gru_wz=u(dim, dim), gru_uz=u(dim, dim), gru_bz=u(dim),
            gru_wr=u(dim, dim), gru_ur=u(dim, dim), gru_br=u(dim),
            gru_wn=u(dim, dim), gru_un=u(dim, dim), gru_bn=u(dim),
            proj_w=u(dim, 3 * dim), proj_b=u(dim),
            ff1_w=u(hidden, 5 * dim), ff1_b=u(hidden),
            ff2_w=u(hidden, hidden), ff2_b=u(hidden),
            out_v=u(hidden),
            threshold=threshold,
        )

    def param_items(self) -> list[tuple[str, np.ndarray]]:
        names = [
            "gru_wz", "gru_uz", "gru_bz", "gru_wr", "gru_ur", "gru_br",
            "gru_wn", "gru_un", "gru_bn", "proj_w", "proj_b",
            "ff1_w", "ff1_b", "ff2_w", "ff2_b", "out_v",
        ]
        return [(name, getattr(self, name)) for name in names]

    def to_vector(self) -> np.ndarray:
        return np.concatenate([arr.ravel() for _, arr in self.param_items()])

    def with_vector(self, vec: np.ndarray) -> "AnsFindModel":
        """Copy of the model with parameters taken from a flat vector."""
        fields = {}
        offset = 0
        for name, arr in self.param_items():
            size = arr.size
            fields[name] = vec[offset : offset + size].reshape(arr.shape).copy()
            offset += size
        if offset != vec.size:
            raise ValueError(f"expected {offset} parameters, got {vec.size}")
        return AnsFindModel(threshold=self.threshold, **fields)

    def save(self, path: str | Path) -> None:
        meta = {"dim": self.dim, "hidden": self.hidden, "threshold": self.threshold}
        save_params(path, "ansfind", meta, self.param_items())


def load_ansfind(path: str | Path) -> AnsFindModel:
    _, meta, arrays = load_params(path, expect_kind="ansfind")
    return AnsFindModel(threshold=float(meta.get("threshold", DEFAULT_THRESHOLD)), **arrays)


# --------------------------------------------------------------------------
# Forward operations.


def extract_candidates(sentence: AnnotatedSentence) -> list[Candidate]:
    """All constituents as candidate spans, deduplicated on (start, end)."""
    spans = sorted({(c.start, c.end) for c in sentence.constituents})
    return [Candidate(start, end) for start, end in spans]


def sentence_matrix(sentence: AnnotatedSentence, table: EmbeddingTable) -> np.ndarray:
    """Embeddings of the sentence tokens, one row per token."""
    if not sentence.tokens:
        return np.zeros((0, table.dim))
    return np.stack([table.embed(t) for t in sentence.tokens])


def span_input(emb: np.ndarray, start: int, end: int, window: int = CONTEXT_WINDOW) -> np.ndarray:
    """[span avg; left-window avg; right-window avg]; empty windows are zero."""
    dim = emb.shape[1]
    length = emb.shape[0]
    inside = emb[start:end].mean(axis=0)
    left = emb[max(0, start - window) : start]
    right = emb[end : min(length, end + window)]
    left_avg = left.mean(axis=0) if left.shape[0] else np.zeros(dim)
    right_avg = right.mean(axis=0) if right.shape[0] else np.zeros(dim)
    return np.concatenate([inside, left_avg, right_avg])


def span_representation(
    sentence: AnnotatedSentence, cand: Candidate, table: EmbeddingTable, model: AnsFindModel
) -> np.ndarray:
    """Projected span features for one candidate."""
    emb = sentence_matrix(sentence, table)
    return model.proj_w @ span_input(emb, cand.start, cand.end) + model.proj_b


def question_prefix(question: AnnotatedSentence) -> list[Token]:
    """Tokens strictly before the first named entity.

    Falls back to the first min(6, length) tokens when the question has
    no entity or the entity starts the question.
    """
    tokens = list(question.tokens)
    for i, token in enumerate(tokens):
        if token.ner != "O":
            if i > 0:
                return tokens[:i]
            break
    return tokens[: min(FALLBACK_PREFIX_LEN, len(tokens))]


def _gru_forward(model: AnsFindModel, inputs: np.ndarray):
    """Run the gated recurrent unit; returns (final state, per-step cache)."""
    state = np.zeros(model.dim)
    cache = []
    for x in inputs:
        update = _sigmoid(model.gru_wz @ x + model.gru_uz @ state + model.gru_bz)
        reset = _sigmoid(model.gru_wr @ x + model.gru_ur @ state + model.gru_br)
        new = np.tanh(model.gru_wn @ x + model.gru_un @ (reset * state) + model.gru_bn)
        next_state = (1.0 - update) * state + update * new
        cache.append((x, state, update, reset, new))
        state = next_state
    return state, cache


def encode_question(
    prefix: Sequence[Token], model: AnsFindModel, table: EmbeddingTable
) -> np.ndarray:
    """Final recurrent state over the prefix embeddings (zero initial state)."""
    if not prefix:
        raise ValueError("question prefix must be non-empty")
    inputs = np.stack([table.embed(t) for t in prefix])
    state, _ = _gru_forward(model, inputs)
    return state


def _joint_features(h_q: np.ndarray, h_span: np.ndarray, e_start, e_end) -> np.ndarray:
    return np.concatenate([h_q, h_span, h_span * h_q, e_start, e_end])


def plausibility(
    h_q: np.ndarray,
    h_span: np.ndarray,
    e_start: np.ndarray,
    e_end: np.ndarray,
    model: AnsFindModel,
) -> float:
    """P(candidate is a plausible answer), strictly inside (0, 1)."""
    x = _joint_features(h_q, h_span, e_start, e_end)
    if x.shape[0] != model.ff1_w.shape[1]:
        raise ValueError(
            f"feature length {x.shape[0]} does not match model input {model.ff1_w.shape[1]}"
        )
    a1 = np.maximum(model.ff1_w @ x + model.ff1_b, 0.0)
    h2 = model.ff2_w @ a1 + model.ff2_b
    return float(_sigmoid(model.out_v @ h2))


def candidate_probabilities(
    sentence: AnnotatedSentence,
    h_q: np.ndarray,
    model: AnsFindModel,
    table: EmbeddingTable,
) -> tuple[list[Candidate], np.ndarray]:
    """Plausibility of every candidate of one sentence (batched)."""
    cands = extract_candidates(sentence)
    if not cands:
        return [], np.zeros(0)
    emb = sentence_matrix(sentence, table)
    rows = []
    for cand in cands:
        h_span = model.proj_w @ span_input(emb, cand.start, cand.end) + model.proj_b
        rows.append(_joint_features(h_q, h_span, emb[cand.start], emb[cand.end - 1]))
    x = np.stack(rows)
    a1 = np.maximum(x @ model.ff1_w.T + model.ff1_b, 0.0)
    h2 = a1 @ model.ff2_w.T + model.ff2_b
    return cands, _sigmoid(h2 @ model.out_v)


def answerable(probabilities: Iterable[float], threshold: float) -> float:
    """1.0 iff some probability strictly exceeds the threshold."""
    return 1.0 if any(p > threshold for p in probabilities) else 0.0


def s_ans(
    bundle: RetrievalBundle,
    doc: Document,
    sentence_index: int,
    model: AnsFindModel,
    table: EmbeddingTable,
    h_q: np.ndarray | None = None,
) -> float:
    """Binary sentence score: does it hold any plausible answer candidate?

    Sentences with no candidates score 0.0. The question encoding can be
    passed in to amortize it across the sentences of one bundle.
    """
    if h_q is None:
        h_q = encode_question(question_prefix(bundle.question), model, table)
    sentence = next(s for s in doc.sentences if s.sentence_index == sentence_index)
    _, probs = candidate_probabilities(sentence, h_q, model, table)
    return answerable(probs, model.threshold)


class AnsFindSelector(Selector):
    """Scores sentences with the binary answer-finding bit alone."""

    name = "ansfind"

    def __init__(self, model: AnsFindModel, table: EmbeddingTable):
        if model.dim != table.dim:
            raise ValueError(
                f"model dimension {model.dim} does not match table dimension {table.dim}"
            )
        self.model = model
        self.table = table

    def prepare(self, bundle: RetrievalBundle):
        return encode_question(question_prefix(bundle.question), self.model, self.table)

    def score_sentence(self, bundle, doc, sentence_index, ctx) -> float:
        return s_ans(bundle, doc, sentence_index, self.model, self.table, h_q=ctx)


# --------------------------------------------------------------------------
# Training.


def jaccard(a: Iterable[str], b: Iterable[str]) -> float:
    """|a & b| / |a | b| over string sets; 0.0 when both are empty."""
    sa, sb = set(a), set(b)
    union = sa | sb
    if not union:
        return 0.0
    return len(sa & sb) / len(union)


@dataclass(frozen=True)
class TrainingInstance:
    question: AnnotatedSentence
    sentence: AnnotatedSentence
    candidate: Candidate
    label: int


def build_training_instances(
    bundle: RetrievalBundle,
    seed: int = 0,
    rng: np.random.Generator | None = None,
    negatives: int = DEFAULT_NEGATIVES,
) -> list[TrainingInstance]:
    """Labeled candidates for one bundle.

    Per answer-bearing sentence: one positive, the candidate with the
    highest Jaccard similarity to a gold answer (ties to the smaller
    (start, end)), plus min(negatives, available) negatives sampled
    uniformly without replacement from the bundle's other candidates.
    """
    if rng is None:
        rng = np.random.default_rng(seed)
    if not bundle.answers:
        raise TrainingError(f"bundle {bundle.question_id!r} has no gold answers")
    answer_sets = [frozenset(a.lower().split()) for a in bundle.answers]
    answer_sets = [s for s in answer_sets if s]

    entries: list[tuple[AnnotatedSentence, Candidate]] = []
    for _, sentence in bundle.sentences():
        for cand in extract_candidates(sentence):
            entries.append((sentence, cand))
    if not entries:
        raise TrainingError(f"bundle {bundle.question_id!r} has no candidates")

    instances: list[TrainingInstance] = []
    for _, sentence in bundle.sentences():
        if not contains_answer([sentence], bundle.answers):
            continue
        cands = extract_candidates(sentence)
        if not cands:
            continue

        def similarity(cand: Candidate) -> float:
            tokens = {t.text.lower() for t in sentence.tokens[cand.start : cand.end]}
            return max(jaccard(tokens, answer) for answer in answer_sets)

        positive = min(cands, key=lambda c: (-similarity(c), c.start, c.end))
        instances.append(TrainingInstance(bundle.question, sentence, positive, 1))

        pool = [e for e in entries if not (e[0] is sentence and e[1] == positive)]
        n_neg = min(negatives, len(pool))
        if n_neg:
            chosen = rng.choice(len(pool), size=n_neg, replace=False)
            for idx in sorted(chosen):
                neg_sentence, neg_cand = pool[idx]
                instances.append(TrainingInstance(bundle.question, neg_sentence, neg_cand, 0))
    return instances


def training_instances(
    bundles: Sequence[RetrievalBundle], seed: int = 0, negatives: int = DEFAULT_NEGATIVES
) -> list[TrainingInstance]:
    """Instances across many bundles; bundles without answer-bearing sentences contribute none."""
    rng = np.random.default_rng(seed)
    instances: list[TrainingInstance] = []
    for bundle in bundles:
        instances.extend(build_training_instances(bundle, rng=rng, negatives=negatives))
    return instances


@dataclass
class _InstanceArrays:
    prefix: np.ndarray      # (T, dim), shared across instances of one question
    span: np.ndarray        # (3*dim,)
    e_start: np.ndarray
    e_end: np.ndarray
    label: float


def prepare_arrays(
    instances: Sequence[TrainingInstance], table: EmbeddingTable
) -> list[_InstanceArrays]:
    """Precompute the fixed (embedding-derived) inputs of each instance."""
    prefix_cache: dict[int, np.ndarray] = {}
    matrix_cache: dict[int, np.ndarray] = {}
    out = []
    for inst in instances:
        qid = id(inst.question)
        if qid not in prefix_cache:
            prefix = question_prefix(inst.question)
            prefix_cache[qid] = np.stack([table.embed(t) for t in prefix])
        sid = id(inst.sentence)
        if sid not in matrix_cache:
            matrix_cache[sid] = sentence_matrix(inst.sentence, table)
        emb = matrix_cache[sid]
        out.append(
            _InstanceArrays(
                prefix=prefix_cache[qid],
                span=span_input(emb, inst.candidate.start, inst.candidate.end),
                e_start=emb[inst.candidate.start],
                e_end=emb[inst.candidate.end - 1],
                label=float(inst.label),
            )
        )
    return out


def _gru_backward(model: AnsFindModel, cache, d_state: np.ndarray, grads: dict) -> None:
    """Backpropagate through the recurrence; accumulates into grads."""
    for x, prev, update, reset, new in reversed(cache):
        d_update = d_state * (new - prev)
        d_new = d_state * update
        d_prev = d_state * (1.0 - update)

        d_new_pre = d_new * (1.0 - new * new)
        grads["gru_wn"] += np.outer(d_new_pre, x)
        grads["gru_un"] += np.outer(d_new_pre, reset * prev)
        grads["gru_bn"] += d_new_pre
        d_reset_prev = model.gru_un.T @ d_new_pre
        d_reset = d_reset_prev * prev
        d_prev += d_reset_prev * reset

        d_update_pre = d_update * update * (1.0 - update)
        grads["gru_wz"] += np.outer(d_update_pre, x)
        grads["gru_uz"] += np.outer(d_update_pre, prev)
        grads["gru_bz"] += d_update_pre
        d_prev += model.gru_uz.T @ d_update_pre

        d_reset_pre = d_reset * reset * (1.0 - reset)
        grads["gru_wr"] += np.outer(d_reset_pre, x)
        grads["gru_ur"] += np.outer(d_reset_pre, prev)
        grads["gru_br"] += d_reset_pre
        d_prev += model.gru_ur.T @ d_reset_pre

        d_state = d_prev


def loss_and_grads(
    model: AnsFindModel, arrays: Sequence[_InstanceArrays], pos_weight: float = 5.0
):
    """Mean weighted BCE over instances plus gradients for every parameter.

    Positive instances carry ``pos_weight`` times the loss of negatives.
    Question encodings are computed once per shared prefix; their
    gradient accumulates over all instances of that question before the
    recurrence is unrolled backwards.
    """
    n = len(arrays)
    grads = {name: np.zeros_like(arr) for name, arr in model.param_items()}
    enc_cache: dict[int, tuple[np.ndarray, list]] = {}
    d_hq_acc: dict[int, np.ndarray] = {}
    dim = model.dim
    total = 0.0

    for inst in arrays:
        pid = id(inst.prefix)
        if pid not in enc_cache:
            enc_cache[pid] = _gru_forward(model, inst.prefix)
            d_hq_acc[pid] = np.zeros(dim)
        h_q, _ = enc_cache[pid]

        h_span = model.proj_w @ inst.span + model.proj_b
        x5 = _joint_features(h_q, h_span, inst.e_start, inst.e_end)
        z1 = model.ff1_w @ x5 + model.ff1_b
        a1 = np.maximum(z1, 0.0)
        h2 = model.ff2_w @ a1 + model.ff2_b
        logit = float(model.out_v @ h2)
        weight = pos_weight if inst.label == 1.0 else 1.0
        total += weight * _bce_with_logit(logit, inst.label)

        d_logit = weight * (float(_sigmoid(logit)) - inst.label) / n
        grads["out_v"] += d_logit * h2
        d_h2 = d_logit * model.out_v
        grads["ff2_w"] += np.outer(d_h2, a1)
        grads["ff2_b"] += d_h2
        d_a1 = model.ff2_w.T @ d_h2
        d_z1 = d_a1 * (z1 > 0.0)
        grads["ff1_w"] += np.outer(d_z1, x5)
        grads["ff1_b"] += d_z1
        d_x5 = model.ff1_w.T @ d_z1

        d_hq_acc[pid] += d_x5[:dim] + d_x5[2 * dim : 3 * dim] * h_span
        d_hspan = d_x5[dim : 2 * dim] + d_x5[2 * dim : 3 * dim] * h_q
        grads["proj_w"] += np.outer(d_hspan, inst.span)
        grads["proj_b"] += d_hspan

    for pid, (_, cache) in enc_cache.items():
        _gru_backward(model, cache, d_hq_acc[pid], grads)

    return total / n, grads


@dataclass
class AnsFindTrainConfig:
    learning_rate: float = 0.02
    epochs: int = 5
    batch_size: int = 64
    hidden: int = 200
    seed: int = 0
    pos_weight: float = 5.0
    threshold: float = DEFAULT_THRESHOLD

    def __post_init__(self) -> None:
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be > 0")
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")


def train_ansfind(
    instances: Sequence[TrainingInstance],
    table: EmbeddingTable,
    config: AnsFindTrainConfig,
) -> tuple[AnsFindModel, float]:
    """Mini-batch gradient descent over labeled candidates.

    Deterministic for a fixed config.seed. Raises TrainingError when no
    positive instance exists or the loss stops being finite.
    """
    if not any(inst.label == 1 for inst in instances):
        raise TrainingError("no positive training instances")
    rng = np.random.default_rng(config.seed)
    model = AnsFindModel.init(table.dim, config.hidden, rng, threshold=config.threshold)
    arrays = prepare_arrays(instances, table)

    n = len(arrays)
    for _ in range(config.epochs):
        order = rng.permutation(n)
        for start in range(0, n, config.batch_size):
            batch = [arrays[i] for i in order[start : start + config.batch_size]]
            loss, grads = loss_and_grads(model, batch, pos_weight=config.pos_weight)
            if not np.isfinite(loss):
                raise TrainingError(f"training diverged (loss={loss})")
            for name, arr in model.param_items():
                arr -= config.learning_rate * grads[name]
    final_loss, _ = loss_and_grads(model, arrays, pos_weight=config.pos_weight)
    return model, final_loss


def instance_probabilities(
    model: AnsFindModel, arrays: Sequence[_InstanceArrays]
) -> np.ndarray:
    """Forward pass only, one probability per prepared instance."""
    enc_cache: dict[int, np.ndarray] = {}
    probs = np.zeros(len(arrays))
    for i, inst in enumerate(arrays):
        pid = id(inst.prefix)
        if pid not in enc_cache:
            enc_cache[pid] = _gru_forward(model, inst.prefix)[0]
        h_q = enc_cache[pid]
        h_span = model.proj_w @ inst.span + model.proj_b
        probs[i] = plausibility(h_q, h_span, inst.e_start, inst.e_end, model)
    return probs


def ansfind_accuracy(
    model: AnsFindModel, instances: Sequence[TrainingInstance], table: EmbeddingTable
) -> float:
    """Candidate-level accuracy at a 0.5 decision threshold."""
    arrays = prepare_arrays(instances, table)
    if not arrays:
        return 0.0
    probs = instance_probabilities(model, arrays)
    labels = np.array([inst.label for inst in arrays])
    return float(np.mean((probs > 0.5) == (labels == 1.0)))
