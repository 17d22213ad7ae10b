"""Sentence selection toolkit for coarse-to-fine open-domain QA pipelines.

Given a question and its retrieved documents, score every sentence with
retrieval-based (tf-idf, bag-of-words), answer-finding, evidence-
matching, or ensemble selectors; pick the top-k sentences; and measure
answer recall and throughput.
"""

from .ansfind import (
    AnsFindModel,
    AnsFindSelector,
    AnsFindTrainConfig,
    build_training_instances,
    load_ansfind,
    s_ans,
    train_ansfind,
)
from .bow import BowModel, BowSelector, BowTrainConfig, bow_encode, bow_score, load_bow, train_bow
from .corpus import (
    AnnotatedSentence,
    ConstituentSpan,
    Document,
    EmbeddingTable,
    RetrievalBundle,
    Token,
    dump_dataset,
    load_dataset,
    load_embeddings,
    previous_sentence,
)
from .errors import (
    AdapterError,
    AlignmentError,
    DatasetParseError,
    SchemaError,
    SelectorError,
    SieveError,
    TrainingError,
)
from .evdmatch import EnsembleSelector, Evidence, EvdMatchSelector, ensemble_score, evidence_set, match, s_evd
from .metrics import EvalReport, contains_answer, evaluate, exact_match, f1_score, normalize_answer
from .pipeline import BenchmarkReport, PipelineConfig, SelectionResult, benchmark, run_pipeline
from .selection import ConstantSelector, ScoredSentence, Selector, score_all, select_top_k
from .tfidf import TfIdfSelector, TfIdfStats, build_stats, cosine, tfidf_score, vectorize

__version__ = "0.1.0"
