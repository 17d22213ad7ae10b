"""Data model and ingestion: questions, retrieved documents, embeddings.

All types are immutable after construction and safe to share across
workers. Annotations (lemmas, POS, NER, constituents) are produced
offline and arrive already attached to the dataset file; nothing in
this package parses raw text.
"""

from __future__ import annotations

import json
import zlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from .errors import DatasetParseError, EmbeddingFormatError, SchemaError

# Seed for the hashed character-trigram fallback buckets. Fixed so that
# out-of-vocabulary lookups are reproducible across runs and machines.
_OOV_BUCKET_SEED = 745271


@dataclass(frozen=True)
class Token:
    """One annotated token. ``lemma`` is lowercased; ``ner`` is "O" when untagged."""

    text: str
    lemma: str = ""
    pos: str = ""
    ner: str = "O"

    def __post_init__(self) -> None:
        if not self.text:
            raise SchemaError("token.text must be non-empty")
        lemma = self.lemma.lower() if self.lemma else self.text.lower()
        object.__setattr__(self, "lemma", lemma)


@dataclass(frozen=True)
class ConstituentSpan:
    """Half-open token span [start, end) with a parse label.

    ``is_base`` marks constituents that directly dominate POS tags.
    """

    start: int
    end: int
    label: str = ""
    is_base: bool = False

    def __post_init__(self) -> None:
        if not (0 <= self.start < self.end):
            raise SchemaError(
                f"constituent span must satisfy 0 <= start < end, got ({self.start}, {self.end})"
            )


@dataclass(frozen=True)
class AnnotatedSentence:
    """The unit being scored: tokens plus constituent spans."""

    doc_id: str
    sentence_index: int
    tokens: tuple[Token, ...]
    constituents: tuple[ConstituentSpan, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "constituents", tuple(self.constituents))
        if self.sentence_index < 0:
            raise SchemaError("sentence_index must be >= 0")
        n = len(self.tokens)
        for span in self.constituents:
            if span.end > n:
                raise SchemaError(
                    f"constituent.end {span.end} exceeds sentence length {n} "
                    f"(doc_id={self.doc_id!r}, sentence_index={self.sentence_index})"
                )

    def texts(self) -> list[str]:
        return [t.text for t in self.tokens]

    def lemmas(self) -> list[str]:
        return [t.lemma for t in self.tokens]


@dataclass(frozen=True)
class Document:
    """One retrieved document: ranked, with its sentences in order."""

    doc_id: str
    rank: int
    sentences: tuple[AnnotatedSentence, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "sentences", tuple(self.sentences))
        if self.rank < 1:
            raise SchemaError(f"document.rank must be >= 1, got {self.rank}")
        if not self.sentences:
            raise SchemaError(f"document.sentences must be non-empty (doc_id={self.doc_id!r})")
        indices = [s.sentence_index for s in self.sentences]
        if any(b <= a for a, b in zip(indices, indices[1:])):
            raise SchemaError(
                f"sentence_index must be strictly increasing within a document (doc_id={self.doc_id!r})"
            )


@dataclass(frozen=True)
class RetrievalBundle:
    """One question with its K ranked documents and gold answers.

    Documents are stored sorted by rank; ``answers`` may be empty only
    when running unlabeled (inference) data.
    """

    question_id: str
    question: AnnotatedSentence
    documents: tuple[Document, ...]
    answers: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        docs = tuple(sorted(self.documents, key=lambda d: d.rank))
        ranks = [d.rank for d in docs]
        if len(set(ranks)) != len(ranks):
            raise SchemaError(
                f"document ranks must be unique within a bundle (question_id={self.question_id!r})"
            )
        object.__setattr__(self, "documents", docs)
        object.__setattr__(self, "answers", tuple(self.answers))

    def sentences(self) -> Iterator[tuple[Document, AnnotatedSentence]]:
        """All retrieved sentences in (doc rank asc, sentence order) order."""
        for doc in self.documents:
            for sentence in doc.sentences:
                yield doc, sentence


def previous_sentence(doc: Document, sentence_index: int) -> AnnotatedSentence | None:
    """Sentence preceding ``sentence_index`` in ``doc``, or None for the first.

    Never crosses document boundaries. Raises IndexError when
    ``sentence_index`` does not name a sentence of ``doc``.
    """
    for pos, sentence in enumerate(doc.sentences):
        if sentence.sentence_index == sentence_index:
            return doc.sentences[pos - 1] if pos > 0 else None
    raise IndexError(f"sentence_index {sentence_index} not in document {doc.doc_id!r}")


# --------------------------------------------------------------------------
# Dataset files: UTF-8, one JSON object per line.


def _parse_token(obj: dict, where: str) -> Token:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where} must be an object")
    try:
        return Token(
            text=obj.get("text", ""),
            lemma=obj.get("lemma", ""),
            pos=obj.get("pos", ""),
            ner=obj.get("ner", "O"),
        )
    except SchemaError as exc:
        raise SchemaError(f"{where}: {exc}") from None


def _parse_sentence(obj: dict, doc_id: str, sentence_index: int, where: str) -> AnnotatedSentence:
    if not isinstance(obj, dict) or "tokens" not in obj:
        raise SchemaError(f"{where}.tokens is missing")
    tokens = tuple(
        _parse_token(t, f"{where}.tokens[{i}]") for i, t in enumerate(obj["tokens"])
    )
    constituents = []
    for i, c in enumerate(obj.get("constituents", ())):
        cwhere = f"{where}.constituents[{i}]"
        try:
            span = ConstituentSpan(
                start=int(c["start"]),
                end=int(c["end"]),
                label=str(c.get("label", "")),
                is_base=bool(c.get("is_base", False)),
            )
        except KeyError as exc:
            raise SchemaError(f"{cwhere}.{exc.args[0]} is missing") from None
        except SchemaError as exc:
            raise SchemaError(f"{cwhere}: {exc}") from None
        constituents.append(span)
    try:
        return AnnotatedSentence(doc_id, sentence_index, tokens, tuple(constituents))
    except SchemaError as exc:
        raise SchemaError(f"{where}: {exc}") from None


def parse_bundle(obj: dict) -> RetrievalBundle:
    """Build a validated RetrievalBundle from one decoded JSON record."""
    if not isinstance(obj, dict):
        raise SchemaError("record must be a JSON object")
    for key in ("question_id", "question", "documents"):
        if key not in obj:
            raise SchemaError(f"{key} is missing")
    qid = str(obj["question_id"])
    question = _parse_sentence(obj["question"], qid, 0, "question")
    documents = []
    for di, dobj in enumerate(obj["documents"]):
        dwhere = f"documents[{di}]"
        if not isinstance(dobj, dict):
            raise SchemaError(f"{dwhere} must be an object")
        for key in ("doc_id", "rank", "sentences"):
            if key not in dobj:
                raise SchemaError(f"{dwhere}.{key} is missing")
        doc_id = str(dobj["doc_id"])
        sentences = tuple(
            _parse_sentence(s, doc_id, si, f"{dwhere}.sentences[{si}]")
            for si, s in enumerate(dobj["sentences"])
        )
        try:
            documents.append(Document(doc_id=doc_id, rank=int(dobj["rank"]), sentences=sentences))
        except SchemaError as exc:
            raise SchemaError(f"{dwhere}: {exc}") from None
    answers = tuple(str(a) for a in obj.get("answers", ()))
    return RetrievalBundle(question_id=qid, question=question, documents=tuple(documents), answers=answers)


def load_dataset(path: str | Path, require_answers: bool = False) -> list[RetrievalBundle]:
    """Read a line-delimited dataset file into validated bundles.

    Raises DatasetParseError for unreadable lines (naming the line
    number) and SchemaError for invariant violations (naming the field).
    """
    bundles = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DatasetParseError(f"line {lineno}: invalid JSON ({exc.msg})") from None
            try:
                bundle = parse_bundle(obj)
            except SchemaError as exc:
                raise SchemaError(f"line {lineno}: {exc}") from None
            if require_answers and not bundle.answers:
                raise SchemaError(f"line {lineno}: answers must be non-empty in labeled mode")
            bundles.append(bundle)
    return bundles


def _sentence_to_dict(sentence: AnnotatedSentence) -> dict:
    return {
        "tokens": [
            {"text": t.text, "lemma": t.lemma, "pos": t.pos, "ner": t.ner}
            for t in sentence.tokens
        ],
        "constituents": [
            {"start": c.start, "end": c.end, "label": c.label, "is_base": c.is_base}
            for c in sentence.constituents
        ],
    }


def bundle_to_dict(bundle: RetrievalBundle) -> dict:
    return {
        "question_id": bundle.question_id,
        "question": _sentence_to_dict(bundle.question),
        "documents": [
            {
                "doc_id": doc.doc_id,
                "rank": doc.rank,
                "sentences": [_sentence_to_dict(s) for s in doc.sentences],
            }
            for doc in bundle.documents
        ],
        "answers": list(bundle.answers),
    }


def dump_dataset(bundles: Iterable[RetrievalBundle], path: str | Path) -> None:
    """Write bundles as one JSON object per line (the load_dataset format)."""
    with open(path, "w", encoding="utf-8") as handle:
        for bundle in bundles:
            handle.write(json.dumps(bundle_to_dict(bundle), ensure_ascii=True))
            handle.write("\n")


# --------------------------------------------------------------------------
# Embedding tables.


@dataclass
class EmbeddingTable:
    """Static word-vector lookup with a deterministic OOV fallback.

    Stored words resolve to their file vectors exactly. Unseen words
    fall back to the mean of hashed character-trigram bucket vectors,
    scaled to unit norm; the buckets come from a fixed-seed generator,
    so the same word maps to the same vector in every run.
    """

    dim: int
    entries: dict[str, np.ndarray]
    oov_buckets: int = 256
    _buckets: np.ndarray | None = field(default=None, repr=False, compare=False)

    def _bucket_vectors(self) -> np.ndarray:
        if self._buckets is None:
            rng = np.random.default_rng(_OOV_BUCKET_SEED)
            buckets = rng.standard_normal((self.oov_buckets, self.dim))
            buckets.setflags(write=False)
            self._buckets = buckets
        return self._buckets

    def embed(self, token: Token | str) -> np.ndarray:
        """Vector for a token (total function; lowercased lookup)."""
        word = (token.text if isinstance(token, Token) else token).lower()
        stored = self.entries.get(word)
        if stored is not None:
            return stored
        return self._oov_vector(word)

    def _oov_vector(self, word: str) -> np.ndarray:
        padded = f"<{word}>"
        trigrams = [padded[i : i + 3] for i in range(len(padded) - 2)]
        buckets = self._bucket_vectors()
        rows = [buckets[zlib.crc32(tri.encode("utf-8")) % self.oov_buckets] for tri in trigrams]
        vec = np.mean(rows, axis=0)
        norm = float(np.linalg.norm(vec))
        if norm > 0.0:
            vec = vec / norm
        return vec


def embed(table: EmbeddingTable, token: Token | str) -> np.ndarray:
    return table.embed(token)


def load_embeddings(path: str | Path, oov_buckets: int = 256) -> EmbeddingTable:
    """Read a plain-text `word v1 ... vd` vector table.

    The first line fixes the dimension; later lines with a different
    dimension raise EmbeddingFormatError. Duplicate words keep the
    first occurrence.
    """
    entries: dict[str, np.ndarray] = {}
    dim = 0
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            parts = line.split()
            if not parts:
                continue
            word, values = parts[0], parts[1:]
            if not values:
                raise EmbeddingFormatError(f"line {lineno}: no vector components")
            if dim == 0:
                dim = len(values)
            elif len(values) != dim:
                raise EmbeddingFormatError(
                    f"line {lineno}: expected {dim} components, got {len(values)}"
                )
            if word in entries:
                continue
            try:
                vec = np.array([float(v) for v in values], dtype=np.float64)
            except ValueError:
                raise EmbeddingFormatError(f"line {lineno}: non-numeric component") from None
            vec.setflags(write=False)
            entries[word] = vec
    if dim == 0:
        raise EmbeddingFormatError("embedding file is empty")
    return EmbeddingTable(dim=dim, entries=entries, oov_buckets=oov_buckets)
