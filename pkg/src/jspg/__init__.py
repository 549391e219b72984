"""Keyword retrieval for Chinese ASR biasing.

Filters a large keyword dictionary down to a small high-relevance subset
per utterance by fusing a semantic embedding score with pinyin and glyph
relatedness computed through an anchored sequence alignment.
"""

from .align import (
    AlignmentResult,
    HypothesisSet,
    Keyword,
    align_costs,
    alignment_matrix,
    extended_sw,
    relatedness_nbest,
)
from .chardata import CharRecord, ResourceError, ResourceTable, load_resources
from .charsim import (
    CharSimCache,
    SimilarityKind,
    levenshtein,
    sim_glyph,
    sim_pinyin,
    substitution_cost,
)
from .evalharness import (
    DatasetError,
    EvalRecord,
    RecallReport,
    load_dataset,
    macro_recall_at_k,
    recall_at_k,
    run_eval,
)
from .fusion import (
    Dictionary,
    MissingSemanticPolicy,
    RetrievalConfig,
    ScoredKeyword,
    fuse_final,
    fuse_pg,
    load_dictionary,
    retrieve_topk,
)
from .semantic import (
    EmbeddingError,
    EmbeddingStore,
    build_query_text,
    cosine,
    load_embedding_store,
    semantic_score,
)

__version__ = "0.1.0"
