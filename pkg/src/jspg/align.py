"""Sequence-level similarity: anchored alignment of a short keyword
against a longer, noisy hypothesis, and the N-best max aggregation.

The aligner is a Smith-Waterman-style DP with two modifications: the
substitution weight between characters is ``1 - similarity`` instead of
a fixed 1, and keyword characters may not be skipped at the first or
last keyword position, so the entire keyword is forced to align against
a contiguous-ish window of the hypothesis. The relatedness likelihood

    rl = (|w| - cost) / |w|,  clamped to [0, 1]

scores how well keyword ``w`` fits somewhere inside the hypothesis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .charsim import CharSimCache, SimilarityKind
from .kernels import anchored_cost_arr

TraceStep = tuple[str, int, int]


@dataclass(frozen=True)
class Keyword:
    """A non-empty dictionary keyword."""

    text: str

    def __post_init__(self):
        if not self.text:
            raise ValueError("keyword must be non-empty")

    def __len__(self) -> int:
        return len(self.text)


@dataclass(frozen=True)
class HypothesisSet:
    """One utterance's N-best transcriptions, N >= 1."""

    utterance_id: str
    hypotheses: tuple[str, ...]

    def __post_init__(self):
        if not self.hypotheses:
            raise ValueError("hypothesis set must contain at least one hypothesis")
        object.__setattr__(self, "hypotheses", tuple(self.hypotheses))


@dataclass(frozen=True)
class AlignmentResult:
    """Outcome of aligning one keyword against one hypothesis.

    ``cost`` is the minimum anchored alignment cost (inf when the
    hypothesis is too short to host the keyword); ``rl`` the clamped
    relatedness likelihood; ``end_index`` the 1-based hypothesis position
    where the optimal alignment ends (0 when infeasible); ``trace`` an
    optional list of (move, i, j) steps, moves being ``align`` (pair the
    characters), ``skip-hyp`` and ``skip-kw``.
    """

    cost: float
    rl: float
    end_index: int
    trace: tuple[TraceStep, ...] | None = None


def _relatedness(cost: float, keyword_len: int) -> float:
    rl = (keyword_len - cost) / keyword_len
    return min(1.0, max(0.0, rl))


def alignment_matrix(costs: np.ndarray, gap_cost: float = 1.0) -> np.ndarray:
    """Full (n+1) x (m+1) DP matrix for a substitution-cost matrix.

    Row 0 is the virtual start (inf everywhere but column 0); column 0 is
    0 so the alignment may begin at any hypothesis position. Kept for
    traces and debug printing; cost-only queries use the rolling-row
    kernel instead.
    """
    n, m = costs.shape
    d = np.full((n + 1, m + 1), np.inf, dtype=np.float64)
    d[:, 0] = 0.0
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            v = d[i - 1, j - 1] + costs[i - 1, j - 1]
            v = min(v, d[i - 1, j] + gap_cost)
            if 1 < j < m:
                v = min(v, d[i, j - 1] + gap_cost)
            d[i, j] = v
    return d


def _trace_back(
    d: np.ndarray, costs: np.ndarray, gap_cost: float, end_row: int
) -> tuple[TraceStep, ...]:
    """Recover one optimal path, preferring align > skip-hyp > skip-kw."""
    n, m = costs.shape
    steps: list[TraceStep] = []
    i, j = end_row, m
    while j > 0:
        here = d[i, j]
        if i > 0 and d[i - 1, j - 1] + costs[i - 1, j - 1] == here:
            steps.append(("align", i, j))
            i, j = i - 1, j - 1
        elif i > 0 and d[i - 1, j] + gap_cost == here:
            steps.append(("skip-hyp", i, j))
            i = i - 1
        elif 1 < j < m and d[i, j - 1] + gap_cost == here:
            steps.append(("skip-kw", i, j))
            j = j - 1
        else:  # the matrix was produced by the recurrence above
            raise RuntimeError(f"no predecessor for cell ({i}, {j})")
    steps.reverse()
    return tuple(steps)


def align_costs(
    costs: np.ndarray, gap_cost: float = 1.0, keep_trace: bool = False
) -> AlignmentResult:
    """Anchored alignment over an explicit substitution-cost matrix.

    ``costs`` has one row per hypothesis character and one column per
    keyword character. The keyword length is the number of columns.
    """
    m = costs.shape[1]
    if m == 0:
        raise ValueError("keyword must be non-empty")
    if keep_trace:
        d = alignment_matrix(costs, gap_cost)
        last = d[:, m]
        cost = float(last.min())
        if not np.isfinite(cost):
            return AlignmentResult(cost=np.inf, rl=0.0, end_index=0, trace=())
        end_row = int(np.argmin(last))
        trace = _trace_back(d, costs, gap_cost, end_row)
        return AlignmentResult(
            cost=cost, rl=_relatedness(cost, m), end_index=end_row, trace=trace
        )
    cost, end_row = anchored_cost_arr(costs, gap_cost)
    cost = float(cost)
    if not np.isfinite(cost):
        return AlignmentResult(cost=np.inf, rl=0.0, end_index=0)
    return AlignmentResult(
        cost=cost, rl=_relatedness(cost, m), end_index=int(end_row)
    )


def extended_sw(
    cache: CharSimCache,
    kind: SimilarityKind,
    keyword: Keyword,
    hypothesis: str,
    gap_cost: float = 1.0,
    keep_trace: bool = False,
) -> AlignmentResult:
    """Align a keyword against one hypothesis under the given similarity.

    Returns the minimum anchored cost over all end positions in the
    hypothesis and the derived relatedness likelihood. ``keep_trace``
    switches to the full-matrix path and attaches the optimal moves.
    """
    costs = cache.cost_matrix(kind, hypothesis, keyword.text)
    return align_costs(costs, gap_cost=gap_cost, keep_trace=keep_trace)


def relatedness_nbest(
    cache: CharSimCache,
    kind: SimilarityKind,
    keyword: Keyword,
    hypotheses: HypothesisSet,
    gap_cost: float = 1.0,
) -> float:
    """Best relatedness likelihood of the keyword across all hypotheses."""
    return max(
        extended_sw(cache, kind, keyword, hyp, gap_cost=gap_cost).rl
        for hyp in hypotheses.hypotheses
    )
