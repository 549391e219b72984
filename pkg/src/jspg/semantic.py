"""Semantic scoring: instruction-prefixed query construction, embedding
store handling, and cosine similarity.

Embeddings are precomputed and loaded from a JSONL file so the engine
stays free of ML runtime dependencies and semantic scores are fully
deterministic. One record per line:

    {"kind": "keyword" | "query", "key": <text or utterance id>,
     "embedding": [<float>, ...]}

Keyword records are keyed by the raw keyword text; query records by the
utterance id, and their vectors are expected to embed the exact output of
:func:`build_query_text`. An optional HTTP client covers live
deployments: POST ``/embed`` with ``{"texts": [...]}`` returning
``{"embeddings": [[...], ...]}``.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np
import requests

from .align import HypothesisSet, Keyword

QUERY_INSTRUCTION = (
    "Given a list of candidate transcriptions predicted by a speech recognition "
    "model as a query, retrieve keywords relevant to the query. "
    "The candidate transcriptions are: "
)


class EmbeddingError(Exception):
    """Raised for malformed embedding files or failed service calls."""


def build_query_text(hypotheses: HypothesisSet) -> str:
    """Instruction-prefixed query text for one utterance.

    Hypotheses are joined by ", " in order and the sentence is closed
    with ".". Byte-exactness matters: exporters embedding query vectors
    must produce the identical string.
    """
    return QUERY_INSTRUCTION + ", ".join(hypotheses.hypotheses) + "."


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    """Standard cosine similarity in [-1, 1]; errors on dim mismatch or
    zero-norm input rather than inventing a value."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    denom = float(np.linalg.norm(a) * np.linalg.norm(b))
    if denom == 0.0:
        raise ValueError("cosine is undefined for zero-norm vectors")
    return float(np.dot(a, b) / denom)


@dataclass
class EmbeddingStore:
    """Immutable-after-load map of keyword and query embeddings."""

    dim: int | None = None
    _keyword: dict[str, np.ndarray] = field(default_factory=dict)
    _query: dict[str, np.ndarray] = field(default_factory=dict)

    def keyword_vector(self, text: str) -> np.ndarray | None:
        return self._keyword.get(text)

    def query_vector(self, utterance_id: str) -> np.ndarray | None:
        return self._query.get(utterance_id)

    def add(self, kind: str, key: str, vector: np.ndarray) -> None:
        vector = np.asarray(vector, dtype=np.float64)
        if vector.ndim != 1 or vector.size == 0:
            raise EmbeddingError(f"embedding for {key!r} must be a non-empty vector")
        if self.dim is None:
            self.dim = vector.size
        elif vector.size != self.dim:
            raise EmbeddingError(
                f"embedding for {key!r} has dim {vector.size}, store has {self.dim}"
            )
        target = {"keyword": self._keyword, "query": self._query}.get(kind)
        if target is None:
            raise EmbeddingError(f"unknown record kind {kind!r}")
        if key in target:
            raise EmbeddingError(f"duplicate {kind} embedding for {key!r}")
        target[key] = vector

    def __len__(self) -> int:
        return len(self._keyword) + len(self._query)


def load_embedding_store(path: str | Path) -> EmbeddingStore:
    """Parse an embedding JSONL file; the first record fixes the dimension."""
    path = Path(path)
    if not path.is_file():
        raise EmbeddingError(f"embedding file not found: {path}")
    store = EmbeddingStore()
    with path.open("r", encoding="utf-8") as handle:
        for recno, raw in enumerate(handle, 1):
            line = raw.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise EmbeddingError(f"{path}: record {recno}: invalid JSON: {exc}")
            if not isinstance(record, dict):
                raise EmbeddingError(f"{path}: record {recno}: expected an object")
            missing = {"kind", "key", "embedding"} - record.keys()
            if missing:
                raise EmbeddingError(
                    f"{path}: record {recno}: missing fields {sorted(missing)}"
                )
            try:
                store.add(record["kind"], record["key"], np.asarray(record["embedding"]))
            except (EmbeddingError, TypeError, ValueError) as exc:
                raise EmbeddingError(f"{path}: record {recno}: {exc}")
    return store


def semantic_score(
    store: EmbeddingStore, hypotheses: HypothesisSet, keyword: Keyword
) -> float | None:
    """Cosine between the utterance's query embedding and the keyword's
    embedding; None (a miss, not 0) when either vector is absent, so the
    fusion layer can apply its missing-semantics policy."""
    query = store.query_vector(hypotheses.utterance_id)
    kw = store.keyword_vector(keyword.text)
    if query is None or kw is None:
        return None
    return cosine(query, kw)


def fetch_embeddings(
    base_url: str,
    texts: Sequence[str],
    timeout: float = 30.0,
    retries: int = 2,
) -> list[np.ndarray]:
    """Embed texts through the optional HTTP service.

    POSTs ``{"texts": [...]}`` to ``<base_url>/embed`` and expects
    ``{"embeddings": [[...], ...]}`` with one vector per input text.
    Retries transient transport failures ``retries`` times.
    """
    url = base_url.rstrip("/") + "/embed"
    last_error: Exception | None = None
    for _ in range(retries + 1):
        try:
            response = requests.post(url, json={"texts": list(texts)}, timeout=timeout)
            response.raise_for_status()
            payload = response.json()
            break
        except (requests.RequestException, ValueError) as exc:
            last_error = exc
            time.sleep(0.05)
    else:
        raise EmbeddingError(f"embedding service failed after {retries + 1} attempts: {last_error}")
    vectors = payload.get("embeddings") if isinstance(payload, dict) else None
    if not isinstance(vectors, list) or len(vectors) != len(texts):
        raise EmbeddingError("embedding service returned a malformed response")
    out = [np.asarray(v, dtype=np.float64) for v in vectors]
    dims = {v.shape for v in out}
    if len(dims) > 1:
        raise EmbeddingError(f"embedding service returned mixed dimensions: {dims}")
    return out


def store_from_service(
    base_url: str,
    keywords: Sequence[str],
    utterances: Sequence[HypothesisSet],
    timeout: float = 30.0,
    retries: int = 2,
    batch_size: int = 64,
) -> EmbeddingStore:
    """Build a full EmbeddingStore by embedding every keyword and every
    instruction-prefixed query through the HTTP service. Vectors are
    indistinguishable from ones loaded off a file."""
    store = EmbeddingStore()
    items = [("keyword", kw, kw) for kw in keywords]
    items += [("query", q.utterance_id, build_query_text(q)) for q in utterances]
    for start in range(0, len(items), batch_size):
        batch = items[start : start + batch_size]
        vectors = fetch_embeddings(
            base_url, [text for _, _, text in batch], timeout=timeout, retries=retries
        )
        for (kind, key, _), vector in zip(batch, vectors):
            store.add(kind, key, vector)
    return store
