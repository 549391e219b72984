"""Score fusion and top-K retrieval over the keyword dictionary.

Per keyword the engine computes a pinyin relatedness score, a glyph
relatedness score and an optional semantic score, fuses them as

    pg    = alpha * pinyin + (1 - alpha) * glyph
    final = beta * semantic + (1 - beta) * pg

and returns the K best keywords. Ties are broken by keyword text in
codepoint order so output is reproducible across runs, machines and
worker counts.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Sequence

from .align import HypothesisSet, Keyword, relatedness_nbest
from .charsim import CharSimCache, SimilarityKind
from .semantic import EmbeddingStore, semantic_score


class MissingSemanticPolicy(str, enum.Enum):
    """What the final score does when a semantic score is absent.

    ``TREAT_AS_ZERO`` keeps strict fidelity to the fusion formula with a
    zero semantic term; ``RENORMALIZE`` (default) falls back to the pure
    phonetic-glyph score so a missing embedding degrades the retriever
    instead of silently halving scores.
    """

    TREAT_AS_ZERO = "treat_as_zero"
    RENORMALIZE = "renormalize_to_pg_only"


@dataclass(frozen=True)
class RetrievalConfig:
    """Weights and knobs for one retrieval run."""

    alpha: float = 0.7
    beta: float = 0.4
    top_k: int = 10
    semantic_enabled: bool = True
    missing_semantic: MissingSemanticPolicy = MissingSemanticPolicy.RENORMALIZE
    gap_cost: float = 1.0
    workers: int = 1

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must be in [0, 1], got {self.alpha}")
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError(f"beta must be in [0, 1], got {self.beta}")
        if self.top_k < 1:
            raise ValueError(f"top_k must be >= 1, got {self.top_k}")
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")


@dataclass(frozen=True)
class ScoredKeyword:
    """A dictionary keyword with its component and fused scores."""

    keyword: Keyword
    f_s: float | None
    f_p: float
    f_g: float
    f_pg: float
    f: float
    rank: int = 0


@dataclass(frozen=True)
class Dictionary:
    """The keyword dictionary: unique, non-empty entries."""

    keywords: tuple[Keyword, ...]

    def __post_init__(self):
        if not self.keywords:
            raise ValueError("dictionary must contain at least one keyword")
        texts = [kw.text for kw in self.keywords]
        if len(set(texts)) != len(texts):
            seen: set[str] = set()
            dup = next(t for t in texts if t in seen or seen.add(t))
            raise ValueError(f"duplicate dictionary keyword {dup!r}")

    @classmethod
    def from_texts(cls, texts: Iterable[str]) -> "Dictionary":
        return cls(tuple(Keyword(t) for t in texts))

    def __len__(self) -> int:
        return len(self.keywords)


def load_dictionary(path: str | Path) -> Dictionary:
    """One keyword per line, UTF-8; blank lines ignored."""
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"dictionary file not found: {path}")
    texts = [line.strip() for line in path.read_text(encoding="utf-8").splitlines()]
    return Dictionary.from_texts([t for t in texts if t])


def fuse_pg(alpha: float, f_p: float, f_g: float) -> float:
    """Convex combination of the pinyin and glyph relatedness scores."""
    return alpha * f_p + (1.0 - alpha) * f_g


def fuse_final(
    beta: float,
    f_s: float | None,
    f_pg: float,
    policy: MissingSemanticPolicy = MissingSemanticPolicy.RENORMALIZE,
) -> float:
    """Final fused score; applies the missing-semantics policy when f_s
    is absent. Semantic scores are passed through unclamped (cosine may
    be negative)."""
    if f_s is None:
        if policy is MissingSemanticPolicy.TREAT_AS_ZERO:
            return (1.0 - beta) * f_pg
        return f_pg
    return beta * f_s + (1.0 - beta) * f_pg


def score_keyword(
    cache: CharSimCache,
    store: EmbeddingStore | None,
    keyword: Keyword,
    hypotheses: HypothesisSet,
    cfg: RetrievalConfig,
) -> ScoredKeyword:
    """Compute every component score and the fused score for one keyword."""
    f_p = relatedness_nbest(
        cache, SimilarityKind.PINYIN, keyword, hypotheses, gap_cost=cfg.gap_cost
    )
    f_g = relatedness_nbest(
        cache, SimilarityKind.GLYPH, keyword, hypotheses, gap_cost=cfg.gap_cost
    )
    f_s = None
    if cfg.semantic_enabled and store is not None:
        f_s = semantic_score(store, hypotheses, keyword)
    f_pg = fuse_pg(cfg.alpha, f_p, f_g)
    f = fuse_final(cfg.beta, f_s, f_pg, cfg.missing_semantic)
    return ScoredKeyword(keyword=keyword, f_s=f_s, f_p=f_p, f_g=f_g, f_pg=f_pg, f=f)


def rank_keywords(
    scored: Sequence[ScoredKeyword], top_k: int
) -> list[ScoredKeyword]:
    """Sort by fused score descending, ties by text ascending; assign
    ranks 1..min(top_k, len)."""
    ordered = sorted(scored, key=lambda s: (-s.f, s.keyword.text))
    return [replace(s, rank=i) for i, s in enumerate(ordered[:top_k], 1)]


def retrieve_topk(
    cache: CharSimCache,
    store: EmbeddingStore | None,
    dictionary: Dictionary,
    hypotheses: HypothesisSet,
    cfg: RetrievalConfig,
) -> list[ScoredKeyword]:
    """Score every dictionary keyword against the utterance and return the
    top-K ranked list.

    The scan is exhaustive by design. With ``cfg.workers > 1`` keywords
    are scored across a thread pool; all shared state is read-only and
    scores are input-determined, so parallelism cannot change the output.
    """
    if cfg.workers > 1 and len(dictionary) > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            scored = list(
                pool.map(
                    lambda kw: score_keyword(cache, store, kw, hypotheses, cfg),
                    dictionary.keywords,
                )
            )
    else:
        scored = [
            score_keyword(cache, store, kw, hypotheses, cfg)
            for kw in dictionary.keywords
        ]
    return rank_keywords(scored, cfg.top_k)


def scored_to_record(utterance_id: str, ranked: Sequence[ScoredKeyword]) -> dict:
    """JSON-ready output record for one utterance; scores to 6 decimals."""

    def r6(x: float | None) -> float | None:
        return None if x is None else round(x, 6)

    return {
        "utterance_id": utterance_id,
        "retrieved": [
            {
                "keyword": s.keyword.text,
                "rank": s.rank,
                "f": r6(s.f),
                "f_s": r6(s.f_s),
                "f_p": r6(s.f_p),
                "f_g": r6(s.f_g),
                "f_pg": r6(s.f_pg),
            }
            for s in ranked
        ],
    }
