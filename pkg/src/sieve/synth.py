"""Synthetic annotated corpora for fixtures, tests, and demos.

Two families:

* pipeline corpora: questions mention two multi-token entity phrases and
  a verb; the answer-bearing sentence paraphrases the question (same
  lemmas, different verb surface) while distractor sentences copy the
  question's surface tokens in scattered order. Lexical-overlap
  selectors are drawn to the distractors; evidence matching and answer
  finding are not, which gives the desk-scale corpora a realistic
  accuracy gap between selector families.

* separable corpora: candidate spans (or whole sentences) built from
  two well-separated embedding clusters, for trainer checks.

Everything is generated from seeded generators, so fixture files are
reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import (
    AnnotatedSentence,
    ConstituentSpan,
    Document,
    RetrievalBundle,
    Token,
)

_SYLLABLES = [
    "ba", "bel", "cor", "dan", "dor", "fen", "gar", "hul", "jin", "kel",
    "lam", "mor", "nad", "or", "pel", "quin", "ras", "sol", "tav", "ul",
    "ven", "wex", "yor", "zan", "bri", "cla", "dru", "fro", "gli", "sta",
]


def _pseudo_words(rng: np.random.Generator, count: int, taken: set[str]) -> list[str]:
    words = []
    while len(words) < count:
        n = rng.integers(2, 4)
        word = "".join(rng.choice(_SYLLABLES) for _ in range(n))
        if word in taken:
            continue
        taken.add(word)
        words.append(word)
    return words


def write_embeddings(entries: dict[str, np.ndarray], path: str | Path) -> None:
    """Write a plain-text `word v1 ... vd` table (load_embeddings format)."""
    with open(path, "w", encoding="utf-8") as handle:
        for word in sorted(entries):
            values = " ".join(f"{x:.6f}" for x in entries[word])
            handle.write(f"{word} {values}\n")


# --------------------------------------------------------------------------
# Pipeline corpora.

_WH = ["who", "what", "where", "which", "when"]
_FUNCTION_WORDS = ["the", "of", "in", "on", "a", "?", "."]
_VERB_SUFFIXES = ["", "s", "ed", "ing"]


@dataclass
class SynthWorld:
    """Shared vocabulary and embeddings for one pipeline corpus family."""

    dim: int
    entries: dict[str, np.ndarray]
    verbs: list[tuple[str, list[str]]]
    entities: list[list[str]]
    answer_words: list[str]
    noise_words: list[str]


def build_world(seed: int = 11, dim: int = 32) -> SynthWorld:
    rng = np.random.default_rng(seed)
    taken: set[str] = set(_WH + _FUNCTION_WORDS)

    verb_stems = _pseudo_words(rng, 40, taken)
    verbs = []
    for stem in verb_stems:
        surfaces = [stem + suffix for suffix in _VERB_SUFFIXES]
        taken.update(surfaces)
        verbs.append((stem, surfaces))

    entity_words = _pseudo_words(rng, 160, taken)
    entities = [
        [entity_words[i], entity_words[i + 1]] for i in range(0, len(entity_words) - 1, 2)
    ]
    answer_words = _pseudo_words(rng, 120, taken)
    noise_words = _pseudo_words(rng, 120, taken)

    answer_axis = rng.standard_normal(dim)
    answer_axis /= np.linalg.norm(answer_axis)

    entries: dict[str, np.ndarray] = {}
    for word in _WH + _FUNCTION_WORDS:
        entries[word] = 0.2 * rng.standard_normal(dim)
    for stem, surfaces in verbs:
        base = 0.6 * rng.standard_normal(dim)
        for surface in surfaces:
            entries[surface] = base + 0.05 * rng.standard_normal(dim)
    for word in entity_words + noise_words:
        entries[word] = 0.6 * rng.standard_normal(dim)
    for word in answer_words:
        entries[word] = 1.5 * answer_axis + 0.3 * rng.standard_normal(dim)
    return SynthWorld(
        dim=dim,
        entries=entries,
        verbs=verbs,
        entities=entities,
        answer_words=answer_words,
        noise_words=noise_words,
    )


def _tok(text: str, pos: str, ner: str = "O") -> Token:
    return Token(text=text, lemma=text.lower(), pos=pos, ner=ner)


def _verb_token(surface: str, lemma: str, pos: str = "VBD") -> Token:
    return Token(text=surface, lemma=lemma, pos=pos, ner="O")


def _base(start: int, end: int, label: str) -> ConstituentSpan:
    return ConstituentSpan(start=start, end=end, label=label, is_base=True)


def _question_sentence(
    qid: str,
    wh: str,
    verb_surface: str,
    verb_lemma: str,
    entity_a: list[str],
    entity_b: list[str],
    tag_entities: bool,
) -> AnnotatedSentence:
    ner = "ENT" if tag_entities else "O"
    tokens = [_tok(wh, "WP"), _verb_token(verb_surface, verb_lemma), _tok("the", "DT")]
    a_start = len(tokens)
    tokens += [Token(text=w.capitalize(), lemma=w, pos="NNP", ner=ner) for w in entity_a]
    a_end = len(tokens)
    tokens.append(_tok("of", "IN"))
    b_start = len(tokens)
    tokens += [Token(text=w.capitalize(), lemma=w, pos="NNP", ner=ner) for w in entity_b]
    b_end = len(tokens)
    tokens.append(_tok("?", "."))
    constituents = [
        _base(0, 1, "WHNP"),
        _base(1, 2, "VP"),
        _base(2, a_end, "NP"),
        _base(b_start, b_end, "NP"),
        ConstituentSpan(a_end, b_end, "PP", is_base=False),
        ConstituentSpan(0, len(tokens), "S", is_base=False),
    ]
    return AnnotatedSentence(qid, 0, tuple(tokens), tuple(constituents))


def _sentence(doc_id: str, index: int, tokens: list[Token], constituents) -> AnnotatedSentence:
    return AnnotatedSentence(doc_id, index, tuple(tokens), tuple(constituents))


def _answer_sentence(
    doc_id: str,
    index: int,
    entity_a: list[str],
    verb_surface: str,
    verb_lemma: str,
    answer_tokens: list[str],
    entity_b: list[str] | None,
    noise: list[str],
) -> AnnotatedSentence:
    tokens = [_tok("the", "DT")]
    tokens += [Token(text=w.capitalize(), lemma=w, pos="NNP", ner="ENT") for w in entity_a]
    np1_end = len(tokens)
    tokens.append(_verb_token(verb_surface, verb_lemma))
    vp_end = len(tokens)
    tokens += [_tok(w, "NN") for w in answer_tokens]
    ans_end = len(tokens)
    constituents = [_base(0, np1_end, "NP"), _base(np1_end, vp_end, "VP"), _base(vp_end, ans_end, "NP")]
    if entity_b:
        b_start = len(tokens)
        tokens += [Token(text=w.capitalize(), lemma=w, pos="NNP", ner="ENT") for w in entity_b]
        constituents.append(_base(b_start, len(tokens), "NP"))
    if noise:
        n_start = len(tokens)
        tokens += [_tok(w, "NN") for w in noise]
        constituents.append(_base(n_start, len(tokens), "NP"))
    tokens.append(_tok(".", "."))
    constituents.append(ConstituentSpan(0, len(tokens), "S", is_base=False))
    return _sentence(doc_id, index, tokens, constituents)


def _distractor_sentence(
    doc_id: str,
    index: int,
    entity_a: list[str],
    verb_surface: str,
    verb_lemma: str,
    entity_b: list[str],
    noise: list[str],
) -> AnnotatedSentence:
    # Copies the question's surface vocabulary but breaks the phrase
    # contiguity: high lexical overlap, no evidence matches beyond the verb.
    tokens = [
        _tok("the", "DT"),
        _tok(noise[0], "NN"),
        Token(text=entity_a[0].capitalize(), lemma=entity_a[0], pos="NNP", ner="ENT"),
        _tok(noise[1], "NN"),
        Token(text=entity_a[1].capitalize(), lemma=entity_a[1], pos="NNP", ner="ENT"),
        _tok("of", "IN"),
        _verb_token(verb_surface, verb_lemma),
        Token(text=entity_b[0].capitalize(), lemma=entity_b[0], pos="NNP", ner="ENT"),
        _tok(noise[2], "NN"),
        Token(text=entity_b[1].capitalize(), lemma=entity_b[1], pos="NNP", ner="ENT"),
        _tok("?", "."),
    ]
    constituents = [
        _base(0, 2, "NP"),
        _base(2, 5, "NP"),
        _base(6, 7, "VP"),
        _base(7, 10, "NP"),
        ConstituentSpan(0, len(tokens), "S", is_base=False),
    ]
    return _sentence(doc_id, index, tokens, constituents)


def _noise_sentence(doc_id: str, index: int, words: list[str]) -> AnnotatedSentence:
    tokens = [_tok(w, "NN") for w in words] + [_tok(".", ".")]
    half = max(1, len(words) // 2)
    constituents = [
        _base(0, half, "NP"),
        _base(half, len(words), "NP"),
        ConstituentSpan(0, len(tokens), "S", is_base=False),
    ]
    return _sentence(doc_id, index, tokens, constituents)


def pipeline_bundles(
    world: SynthWorld,
    n_questions: int,
    seed: int,
    id_prefix: str = "q",
    n_docs: int = 4,
    sentences_per_doc: int = 6,
    missing_rate: float = 0.05,
    untagged_rate: float = 0.08,
) -> list[RetrievalBundle]:
    """Generate one pipeline corpus; every bundle carries gold answers."""
    rng = np.random.default_rng(seed)
    bundles = []
    for qi in range(n_questions):
        qid = f"{id_prefix}{qi:04d}"
        wh = _WH[rng.integers(len(_WH))]
        verb_lemma, surfaces = world.verbs[rng.integers(len(world.verbs))]
        q_surface, a_surface = rng.choice(surfaces, size=2, replace=False)
        ent_idx = rng.choice(len(world.entities), size=2, replace=False)
        entity_a, entity_b = world.entities[ent_idx[0]], world.entities[ent_idx[1]]
        n_answer_tokens = int(rng.integers(1, 3))
        answer_tokens = list(rng.choice(world.answer_words, size=n_answer_tokens, replace=False))
        tag_entities = rng.random() > untagged_rate
        answer_missing = rng.random() < missing_rate

        question = _question_sentence(
            qid, wh, q_surface, verb_lemma, entity_a, entity_b, tag_entities
        )
        answers = (" ".join(answer_tokens),)

        answer_doc = int(rng.integers(n_docs)) if not answer_missing else -1
        documents = []
        for rank0 in range(n_docs):
            doc_id = f"{qid}-d{rank0 + 1}"
            sentences: list[AnnotatedSentence] = []
            answer_pos = int(rng.integers(sentences_per_doc)) if rank0 == answer_doc else -1
            mention_before = answer_pos > 0 and rng.random() < 0.35
            for si in range(sentences_per_doc):
                if si == answer_pos:
                    include_b = not mention_before and rng.random() < 0.6
                    noise = list(rng.choice(world.noise_words, size=int(rng.integers(1, 3)), replace=False))
                    sentences.append(
                        _answer_sentence(
                            doc_id, si, entity_a, a_surface, verb_lemma,
                            answer_tokens, entity_b if include_b else None, noise,
                        )
                    )
                elif si == answer_pos - 1 and mention_before:
                    words = list(rng.choice(world.noise_words, size=3, replace=False))
                    tokens = [_tok(words[0], "NN")]
                    b_start = len(tokens)
                    tokens += [
                        Token(text=w.capitalize(), lemma=w, pos="NNP", ner="ENT")
                        for w in entity_b
                    ]
                    tokens += [_tok(words[1], "NN"), _tok(".", ".")]
                    constituents = [
                        _base(0, 1, "NP"),
                        _base(b_start, b_start + len(entity_b), "NP"),
                        ConstituentSpan(0, len(tokens), "S", is_base=False),
                    ]
                    sentences.append(_sentence(doc_id, si, tokens, constituents))
                elif rng.random() < 0.42:
                    noise = list(rng.choice(world.noise_words, size=3, replace=False))
                    sentences.append(
                        _distractor_sentence(
                            doc_id, si, entity_a, q_surface, verb_lemma, entity_b, noise
                        )
                    )
                else:
                    size = int(rng.integers(4, 8))
                    words = list(rng.choice(world.noise_words, size=size, replace=False))
                    sentences.append(_noise_sentence(doc_id, si, words))
            documents.append(Document(doc_id=doc_id, rank=rank0 + 1, sentences=tuple(sentences)))
        bundles.append(
            RetrievalBundle(
                question_id=qid, question=question, documents=tuple(documents), answers=answers
            )
        )
    return bundles


# --------------------------------------------------------------------------
# Separable corpora for trainer checks.


@dataclass
class SeparableWorld:
    dim: int
    entries: dict[str, np.ndarray]
    pos_words: list[str]
    neg_words: list[str]
    question_words: list[str]


def build_separable_world(seed: int = 23, dim: int = 32) -> SeparableWorld:
    rng = np.random.default_rng(seed)
    taken: set[str] = set()
    pos_words = _pseudo_words(rng, 30, taken)
    neg_words = _pseudo_words(rng, 40, taken)
    question_words = _pseudo_words(rng, 12, taken)

    axis = rng.standard_normal(dim)
    axis /= np.linalg.norm(axis)
    entries: dict[str, np.ndarray] = {}
    for word in pos_words:
        entries[word] = 2.0 * axis + 0.15 * rng.standard_normal(dim)
    for word in neg_words:
        entries[word] = -2.0 * axis + 0.15 * rng.standard_normal(dim)
    for word in question_words:
        entries[word] = 0.1 * rng.standard_normal(dim)
    return SeparableWorld(
        dim=dim,
        entries=entries,
        pos_words=pos_words,
        neg_words=neg_words,
        question_words=question_words,
    )


def _plain_sentence(doc_id: str, index: int, words: list[str], spans: list[tuple[int, int]]) -> AnnotatedSentence:
    tokens = tuple(_tok(w, "NN") for w in words)
    constituents = tuple(_base(s, e, "NP") for s, e in spans) + (
        ConstituentSpan(0, len(tokens), "S", is_base=False),
    )
    return AnnotatedSentence(doc_id, index, tokens, constituents)


def bow_separable_bundles(
    world: SeparableWorld, n_questions: int, seed: int, id_prefix: str = "bw"
) -> list[RetrievalBundle]:
    """Positive sentences sit in one embedding cluster, negatives in the other."""
    rng = np.random.default_rng(seed)
    bundles = []
    for qi in range(n_questions):
        qid = f"{id_prefix}{qi:04d}"
        q_words = list(rng.choice(world.question_words, size=4, replace=False))
        question = _plain_sentence(qid, 0, q_words, [(0, 2), (2, 4)])
        answer_word = world.pos_words[int(rng.integers(len(world.pos_words)))]
        documents = []
        for rank0 in range(2):
            doc_id = f"{qid}-d{rank0 + 1}"
            sentences = []
            pos_at = int(rng.integers(3)) if rank0 == 0 else -1
            for si in range(3):
                if si == pos_at:
                    others = [w for w in world.pos_words if w != answer_word]
                    words = [answer_word] + list(rng.choice(others, size=4, replace=False))
                else:
                    words = list(rng.choice(world.neg_words, size=5, replace=False))
                sentences.append(_plain_sentence(doc_id, si, words, [(0, 2), (2, 5)]))
            documents.append(Document(doc_id=doc_id, rank=rank0 + 1, sentences=tuple(sentences)))
        bundles.append(
            RetrievalBundle(
                question_id=qid,
                question=question,
                documents=tuple(documents),
                answers=(answer_word,),
            )
        )
    return bundles


def ansfind_separable_bundles(
    world: SeparableWorld, n_questions: int, seed: int, id_prefix: str = "af"
) -> list[RetrievalBundle]:
    """Answer spans come from one cluster, every other candidate from the other."""
    rng = np.random.default_rng(seed)
    bundles = []
    for qi in range(n_questions):
        qid = f"{id_prefix}{qi:04d}"
        q_words = list(rng.choice(world.question_words, size=3, replace=False))
        question = _plain_sentence(qid, 0, q_words, [(0, 1), (1, 3)])
        answer_pair = list(rng.choice(world.pos_words, size=2, replace=False))
        documents = []
        for rank0 in range(2):
            doc_id = f"{qid}-d{rank0 + 1}"
            sentences = []
            pos_at = int(rng.integers(2)) if rank0 == 0 else -1
            for si in range(2):
                if si == pos_at:
                    fillers = list(rng.choice(world.neg_words, size=3, replace=False))
                    words = answer_pair + fillers
                    sentences.append(_plain_sentence(doc_id, si, words, [(0, 2), (2, 5)]))
                else:
                    words = list(rng.choice(world.neg_words, size=4, replace=False))
                    sentences.append(_plain_sentence(doc_id, si, words, [(0, 2), (2, 4)]))
            documents.append(Document(doc_id=doc_id, rank=rank0 + 1, sentences=tuple(sentences)))
        bundles.append(
            RetrievalBundle(
                question_id=qid,
                question=question,
                documents=tuple(documents),
                answers=(" ".join(answer_pair),),
            )
        )
    return bundles
