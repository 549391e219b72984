"""Recall@K evaluation over a labeled dataset.

Dataset JSONL, one utterance per line:

    {"id": ..., "hypotheses": [...], "gold_keywords": [...],
     "reference": optional}

Recall@K is reported two ways: micro (gold-instance weighted, the
default headline number) and macro (mean of per-utterance recalls).
Utterances without gold keywords contribute to neither. The CSV report
has the header ``k,recall_micro,recall_macro,hits,total``.
"""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Mapping, Sequence

from .align import HypothesisSet
from .charsim import CharSimCache
from .fusion import Dictionary, RetrievalConfig, ScoredKeyword, retrieve_topk
from .semantic import EmbeddingStore

logger = logging.getLogger(__name__)


class DatasetError(Exception):
    """Raised for malformed dataset files or incomplete retrieval input."""


@dataclass(frozen=True)
class EvalRecord:
    """One labeled utterance: hypotheses plus its gold keywords."""

    utterance_id: str
    hypotheses: HypothesisSet
    gold_keywords: tuple[str, ...] = ()
    reference: str | None = None

    def __post_init__(self):
        if len(set(self.gold_keywords)) != len(self.gold_keywords):
            raise ValueError(
                f"duplicate gold keywords for utterance {self.utterance_id!r}"
            )


def load_dataset(path: str | Path) -> list[EvalRecord]:
    path = Path(path)
    if not path.is_file():
        raise DatasetError(f"dataset file not found: {path}")
    records: list[EvalRecord] = []
    seen_ids: set[str] = set()
    with path.open("r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, 1):
            line = raw.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DatasetError(f"{path}:{lineno}: invalid JSON: {exc}")
            if not isinstance(obj, dict) or "id" not in obj or "hypotheses" not in obj:
                raise DatasetError(
                    f"{path}:{lineno}: expected an object with 'id' and 'hypotheses'"
                )
            utt_id = str(obj["id"])
            if utt_id in seen_ids:
                raise DatasetError(f"{path}:{lineno}: duplicate utterance id {utt_id!r}")
            seen_ids.add(utt_id)
            hyps = obj["hypotheses"]
            if not isinstance(hyps, list) or not hyps or not all(
                isinstance(h, str) for h in hyps
            ):
                raise DatasetError(
                    f"{path}:{lineno}: 'hypotheses' must be a non-empty list of strings"
                )
            gold = obj.get("gold_keywords", [])
            if not isinstance(gold, list) or not all(isinstance(g, str) for g in gold):
                raise DatasetError(
                    f"{path}:{lineno}: 'gold_keywords' must be a list of strings"
                )
            try:
                records.append(
                    EvalRecord(
                        utterance_id=utt_id,
                        hypotheses=HypothesisSet(utt_id, tuple(hyps)),
                        gold_keywords=tuple(gold),
                        reference=obj.get("reference"),
                    )
                )
            except ValueError as exc:
                raise DatasetError(f"{path}:{lineno}: {exc}")
    if not records:
        raise DatasetError(f"{path}: dataset is empty")
    return records


def _hits_at_k(retrieved: Sequence[str], gold: Sequence[str], k: int) -> int:
    top = set(retrieved[:k])
    return sum(1 for g in gold if g in top)


def recall_at_k(
    retrieved_by_utterance: Mapping[str, Sequence[str]],
    gold_by_utterance: Mapping[str, Sequence[str]],
    k: int,
) -> float:
    """Micro-averaged Recall@K: gold instances found in the top-k lists
    over all gold instances. A zero-gold corpus scores 1.0 (vacuous) with
    a warning."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    hits = 0
    total = 0
    for utt_id, gold in gold_by_utterance.items():
        if not gold:
            continue
        if utt_id not in retrieved_by_utterance:
            raise DatasetError(f"no retrieval result for utterance {utt_id!r}")
        hits += _hits_at_k(retrieved_by_utterance[utt_id], gold, k)
        total += len(gold)
    if total == 0:
        logger.warning("recall_at_k: no gold keywords anywhere; reporting 1.0")
        return 1.0
    return hits / total


def macro_recall_at_k(
    retrieved_by_utterance: Mapping[str, Sequence[str]],
    gold_by_utterance: Mapping[str, Sequence[str]],
    k: int,
) -> float:
    """Mean of per-utterance recalls over utterances with gold keywords."""
    per_utt = []
    for utt_id, gold in gold_by_utterance.items():
        if not gold:
            continue
        if utt_id not in retrieved_by_utterance:
            raise DatasetError(f"no retrieval result for utterance {utt_id!r}")
        per_utt.append(_hits_at_k(retrieved_by_utterance[utt_id], gold, k) / len(gold))
    if not per_utt:
        logger.warning("macro_recall_at_k: no gold keywords anywhere; reporting 1.0")
        return 1.0
    return sum(per_utt) / len(per_utt)


@dataclass
class RecallReport:
    """Recall-vs-K table plus the per-utterance retrievals behind it."""

    k_values: tuple[int, ...]
    micro: dict[int, float]
    macro: dict[int, float]
    hits: dict[int, int]
    total_gold: int
    retrieved: dict[str, list[ScoredKeyword]]


def run_eval(
    cache: CharSimCache,
    store: EmbeddingStore | None,
    dictionary: Dictionary,
    dataset: Sequence[EvalRecord],
    cfg: RetrievalConfig,
    k_list: Sequence[int],
) -> RecallReport:
    """Retrieve once per utterance at top_k = max(k_list) and derive every
    Recall@K from prefixes of the ranked lists."""
    if not k_list:
        raise ValueError("k_list must not be empty")
    k_values = tuple(sorted(set(int(k) for k in k_list)))
    if k_values[0] < 1:
        raise ValueError(f"k values must be >= 1, got {k_values[0]}")
    run_cfg = replace(cfg, top_k=max(k_values))
    retrieved: dict[str, list[ScoredKeyword]] = {}
    for record in dataset:
        retrieved[record.utterance_id] = retrieve_topk(
            cache, store, dictionary, record.hypotheses, run_cfg
        )
    texts = {
        utt_id: [s.keyword.text for s in ranked] for utt_id, ranked in retrieved.items()
    }
    gold = {record.utterance_id: record.gold_keywords for record in dataset}
    total_gold = sum(len(g) for g in gold.values())
    micro = {k: recall_at_k(texts, gold, k) for k in k_values}
    macro = {k: macro_recall_at_k(texts, gold, k) for k in k_values}
    hits = {
        k: sum(_hits_at_k(texts[u], g, k) for u, g in gold.items() if g)
        for k in k_values
    }
    return RecallReport(
        k_values=k_values,
        micro=micro,
        macro=macro,
        hits=hits,
        total_gold=total_gold,
        retrieved=retrieved,
    )


def write_report_csv(report: RecallReport, path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(["k", "recall_micro", "recall_macro", "hits", "total"])
        for k in report.k_values:
            writer.writerow(
                [
                    k,
                    f"{report.micro[k]:.6f}",
                    f"{report.macro[k]:.6f}",
                    report.hits[k],
                    report.total_gold,
                ]
            )
