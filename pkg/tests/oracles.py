"""Independent reference implementations used to cross-check the library.

Everything here is deliberately written from the definitions, sharing
no code with the package: dense dict arithmetic for tf-idf, full span
enumeration for evidence matching, and a from-scratch rebuild of the
hashed-trigram fallback.
"""

import math
import zlib
from collections import Counter

import numpy as np

from sieve.corpus import (
    AnnotatedSentence,
    ConstituentSpan,
    Document,
    RetrievalBundle,
    Token,
)

WH = {"who", "what", "when", "where", "why", "which", "how", "whom", "whose"}


def brute_force_tfidf_scores(bundle):
    """Score every sentence by recomputing tf-idf/cosine from the definition."""
    sentences = []
    for doc in bundle.documents:
        for sent in doc.sentences:
            sentences.append(((doc.rank, sent.sentence_index), [t.text.lower() for t in sent.tokens]))
    n = len(sentences)
    df = {}
    for _, tokens in sentences:
        for word in set(tokens):
            df[word] = df.get(word, 0) + 1

    def weight_map(tokens):
        counts = Counter(tokens)
        return {
            w: (1.0 + math.log(c)) * (math.log((1.0 + n) / (1.0 + df.get(w, 0))) + 1.0)
            for w, c in counts.items()
        }

    def cos(a, b):
        if not a or not b:
            return 0.0
        dot = sum(a[w] * b[w] for w in a if w in b)
        na = math.sqrt(sum(v * v for v in a.values()))
        nb = math.sqrt(sum(v * v for v in b.values()))
        return dot / (na * nb) if na > 0 and nb > 0 else 0.0

    q = weight_map([t.text.lower() for t in bundle.question.tokens])
    return {key: cos(q, weight_map(tokens)) for key, tokens in sentences}


def naive_s_evd(bundle, doc, sentence_index):
    """Evidence score via full O(|U| * L^2) span enumeration."""
    evidence = []
    for span in bundle.question.constituents:
        if not span.is_base:
            continue
        lemmas = [t.lemma for t in bundle.question.tokens[span.start : span.end]]
        if all(all(not ch.isalnum() for ch in l) for l in lemmas):
            continue
        if all(l in WH for l in lemmas):
            continue
        if lemmas in evidence:
            continue
        evidence.append(lemmas)

    sentences = list(doc.sentences)
    position = next(i for i, s in enumerate(sentences) if s.sentence_index == sentence_index)
    previous = sentences[position - 1] if position > 0 else None

    def hit(ev, sentence):
        if sentence is None:
            return 0
        lemmas = [t.lemma for t in sentence.tokens]
        for i in range(len(lemmas)):
            for j in range(i + 1, len(lemmas) + 1):
                if lemmas[i:j] == ev:
                    return 1
        return 0

    return float(sum(hit(ev, sentences[position]) + hit(ev, previous) for ev in evidence))


def reference_oov_vector(word, dim, buckets, bucket_seed=745271):
    """Rebuild the hashed-trigram fallback from its definition."""
    table = np.random.default_rng(bucket_seed).standard_normal((buckets, dim))
    padded = "<" + word + ">"
    rows = []
    for i in range(len(padded) - 2):
        trigram = padded[i : i + 3]
        rows.append(table[zlib.crc32(trigram.encode("utf-8")) % buckets])
    mean = sum(rows) / len(rows)
    norm = math.sqrt(float(sum(x * x for x in mean)))
    return mean / norm if norm > 0 else mean


# --------------------------------------------------------------------------
# Random corpora for oracle-equivalence fuzzing.

_VOCAB = [
    "alpha", "beta", "gamma", "delta", "north", "river", "play", "write",
    "city", "king", "battle", "year", "who", "what", "?", ".", ",", "the",
]
_LEMMA_ALIASES = {"plays": "play", "wrote": "write", "cities": "city"}
_SURFACES = _VOCAB + ["plays", "wrote", "cities"]


def random_sentence(rng, doc_id, index, min_len=1, max_len=10):
    length = int(rng.integers(min_len, max_len + 1))
    words = [str(rng.choice(_SURFACES)) for _ in range(length)]
    tokens = tuple(
        Token(text=w, lemma=_LEMMA_ALIASES.get(w, w.lower()), pos="NN", ner="O")
        for w in words
    )
    spans = []
    for _ in range(int(rng.integers(0, 5))):
        start = int(rng.integers(0, length))
        end = int(rng.integers(start + 1, length + 1))
        spans.append(
            ConstituentSpan(start=start, end=end, label="NP", is_base=bool(rng.random() < 0.7))
        )
    return AnnotatedSentence(doc_id, index, tokens, tuple(spans))


def random_bundle(rng, qid="rq", max_docs=5, max_sentences=10):
    question = random_sentence(rng, qid, 0, min_len=2, max_len=8)
    documents = []
    for rank in range(1, int(rng.integers(1, max_docs + 1)) + 1):
        doc_id = f"{qid}-d{rank}"
        n = int(rng.integers(1, max_sentences + 1))
        sentences = tuple(random_sentence(rng, doc_id, i) for i in range(n))
        documents.append(Document(doc_id=doc_id, rank=rank, sentences=sentences))
    return RetrievalBundle(
        question_id=qid, question=question, documents=tuple(documents), answers=("alpha",)
    )
