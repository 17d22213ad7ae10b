from pathlib import Path

import pytest

from sieve.corpus import (
    AnnotatedSentence,
    ConstituentSpan,
    Document,
    RetrievalBundle,
    Token,
    load_dataset,
    load_embeddings,
)

FIXTURES = Path(__file__).resolve().parent.parent / "data" / "fixtures"


def make_token(text: str, lemma: str = "", pos: str = "NN", ner: str = "O") -> Token:
    return Token(text=text, lemma=lemma, pos=pos, ner=ner)


def make_sentence(words, doc_id="d1", index=0, spans=(), lemmas=None, ners=None):
    """Sentence from plain words; spans are (start, end, is_base) triples."""
    lemmas = lemmas or [w.lower() for w in words]
    ners = ners or ["O"] * len(words)
    tokens = tuple(
        Token(text=w, lemma=l, pos="NN", ner=n) for w, l, n in zip(words, lemmas, ners)
    )
    constituents = tuple(
        ConstituentSpan(start=s, end=e, label="NP", is_base=b) for s, e, b in spans
    )
    return AnnotatedSentence(doc_id, index, tokens, constituents)


def make_bundle(question_words, docs, answers=(), question_spans=(), question_ners=None, qid="q1"):
    """Bundle from nested word lists: docs = [[sentence words...], ...]."""
    question = make_sentence(
        question_words, doc_id=qid, spans=question_spans, ners=question_ners
    )
    documents = []
    for di, sentences in enumerate(docs):
        doc_id = f"{qid}-d{di + 1}"
        documents.append(
            Document(
                doc_id=doc_id,
                rank=di + 1,
                sentences=tuple(
                    make_sentence(words, doc_id=doc_id, index=si)
                    for si, words in enumerate(sentences)
                ),
            )
        )
    return RetrievalBundle(
        question_id=qid, question=question, documents=tuple(documents), answers=tuple(answers)
    )


@pytest.fixture(scope="session")
def pipeline_table():
    return load_embeddings(FIXTURES / "pipeline_vectors.txt")


@pytest.fixture(scope="session")
def pipeline_train():
    return load_dataset(FIXTURES / "pipeline_train.jsonl")


@pytest.fixture(scope="session")
def pipeline_eval():
    return load_dataset(FIXTURES / "pipeline_eval.jsonl")


@pytest.fixture(scope="session")
def toy_bundles():
    return load_dataset(FIXTURES / "toy.jsonl")


@pytest.fixture(scope="session")
def separable_table():
    return load_embeddings(FIXTURES / "separable_vectors.txt")


@pytest.fixture(scope="session")
def bow_train_bundles():
    return load_dataset(FIXTURES / "bow_train.jsonl")


@pytest.fixture(scope="session")
def bow_heldout_bundles():
    return load_dataset(FIXTURES / "bow_heldout.jsonl")


@pytest.fixture(scope="session")
def ansfind_train_bundles():
    return load_dataset(FIXTURES / "ansfind_train.jsonl")


@pytest.fixture(scope="session")
def ansfind_heldout_bundles():
    return load_dataset(FIXTURES / "ansfind_heldout.jsonl")


@pytest.fixture(scope="session")
def trained_ansfind(pipeline_train, pipeline_table):
    from sieve.ansfind import AnsFindTrainConfig, train_ansfind, training_instances

    instances = training_instances(pipeline_train, seed=13)
    model, _ = train_ansfind(instances, pipeline_table, AnsFindTrainConfig(seed=13))
    return model


@pytest.fixture(scope="session")
def trained_bow(pipeline_train, pipeline_table):
    from sieve.bow import BowTrainConfig, train_bow

    model, _ = train_bow(pipeline_train, pipeline_table, BowTrainConfig(seed=13))
    return model
