"""Character-pair similarity: pinyin similarity, the four-component glyph
similarity, and the substitution-cost view (1 - similarity) consumed by
the aligner.

All similarities are symmetric, lie in [0, 1], and equal 1 exactly for
identical characters, even when a character is absent from every resource
table. Characters without the relevant resource data degrade to
exact-match similarity (1 if equal, else 0), which makes the aligner
behave like classic edit distance on non-CJK symbols.
"""

from __future__ import annotations

import enum
from itertools import product

import numpy as np

from .chardata import ResourceTable
from .kernels import encode_text, lcs_length_arr, levenshtein_arr


class SimilarityKind(str, enum.Enum):
    """Selects which character similarity drives a computation."""

    PINYIN = "pinyin"
    GLYPH = "glyph"


def levenshtein(a: str, b: str) -> int:
    """Unit-cost edit distance; match 0, delete/insert/substitute 1."""
    return int(levenshtein_arr(encode_text(a), encode_text(b)))


def lcs_length(a: str, b: str) -> int:
    """Length of the longest common subsequence of two strings."""
    return int(lcs_length_arr(encode_text(a), encode_text(b)))


def normalized_ld_similarity(a: str, b: str) -> float:
    """1 - LD(a, b) / (|a| + |b|); strictly positive for non-empty inputs
    because LD never exceeds max(|a|, |b|)."""
    total = len(a) + len(b)
    if total == 0:
        return 1.0
    return 1.0 - levenshtein(a, b) / total


def lcs_similarity(a: str, b: str) -> float:
    """2 * LCS(a, b) / (|a| + |b|)."""
    total = len(a) + len(b)
    if total == 0:
        return 1.0
    return 2.0 * lcs_length(a, b) / total


def four_corner_similarity(code1: str, code2: str) -> float:
    """Fraction of positionally equal digits of two 5-digit corner codes."""
    if len(code1) != len(code2):
        raise ValueError("four-corner codes must have equal length")
    return sum(d1 == d2 for d1, d2 in zip(code1, code2)) / len(code1)


def sim_pinyin(table: ResourceTable, c1: str, c2: str) -> float:
    """Pinyin similarity: best normalized-LD similarity over all reading
    pairs of the two characters.

    Polyphonic characters contribute every reading; the maximum is taken
    because a homophonic recognition error can arise from any valid
    reading. Identical characters score 1 regardless of table coverage;
    distinct characters score 0 when either side lacks pinyin data.
    """
    if c1 == c2:
        return 1.0
    rec1 = table.lookup(c1)
    rec2 = table.lookup(c2)
    readings1 = rec1.pinyin if rec1 else ()
    readings2 = rec2.pinyin if rec2 else ()
    if not readings1 or not readings2:
        return 0.0
    return max(
        normalized_ld_similarity(r1, r2) for r1, r2 in product(readings1, readings2)
    )


def glyph_components(table: ResourceTable, c1: str, c2: str) -> dict[str, float | None]:
    """The four glyph sub-similarities, None where data is missing.

    * ``four_corner`` -- positional digit agreement of the corner codes;
    * ``structure``   -- normalized LD over decomposition code strings;
    * ``strokes_ld``  -- normalized LD over stroke sequences;
    * ``strokes_lcs`` -- normalized LCS over stroke sequences.
    """
    rec1 = table.lookup(c1)
    rec2 = table.lookup(c2)
    out: dict[str, float | None] = {
        "four_corner": None,
        "structure": None,
        "strokes_ld": None,
        "strokes_lcs": None,
    }
    if rec1 is None or rec2 is None:
        return out
    if rec1.four_corner and rec2.four_corner:
        out["four_corner"] = four_corner_similarity(rec1.four_corner, rec2.four_corner)
    if rec1.structure and rec2.structure:
        out["structure"] = normalized_ld_similarity(rec1.structure, rec2.structure)
    if rec1.strokes and rec2.strokes:
        out["strokes_ld"] = normalized_ld_similarity(rec1.strokes, rec2.strokes)
        out["strokes_lcs"] = lcs_similarity(rec1.strokes, rec2.strokes)
    return out


def sim_glyph(table: ResourceTable, c1: str, c2: str) -> float:
    """Glyph similarity: mean of the glyph sub-similarities for which both
    characters have data.

    Averaging over available components (instead of scoring absences as 0)
    lets sparse resource tables degrade gracefully. Identical characters
    score 1; distinct characters with no shared component data score 0.
    """
    if c1 == c2:
        return 1.0
    values = [v for v in glyph_components(table, c1, c2).values() if v is not None]
    if not values:
        return 0.0
    return sum(values) / len(values)


def similarity(
    table: ResourceTable, kind: SimilarityKind, c1: str, c2: str
) -> float:
    if kind is SimilarityKind.PINYIN:
        return sim_pinyin(table, c1, c2)
    return sim_glyph(table, c1, c2)


class CharSimCache:
    """Memoized character-pair similarities over one ResourceTable.

    Keys are symmetric, so (a, b) and (b, a) share an entry. Reads and
    first-computations may race across threads: both writers compute the
    same value from the immutable table, so last-write-wins is benign.
    """

    def __init__(self, table: ResourceTable):
        self.table = table
        self._memo: dict[tuple[SimilarityKind, str, str], float] = {}

    def similarity(self, kind: SimilarityKind, c1: str, c2: str) -> float:
        if c1 == c2:
            return 1.0
        key = (kind, c1, c2) if c1 < c2 else (kind, c2, c1)
        value = self._memo.get(key)
        if value is None:
            value = similarity(self.table, kind, c1, c2)
            self._memo[key] = value
        return value

    def cost(self, kind: SimilarityKind, c1: str, c2: str) -> float:
        """Substitution cost 1 - similarity; 0 exactly for identical chars."""
        return 1.0 - self.similarity(kind, c1, c2)

    def cost_matrix(self, kind: SimilarityKind, hypothesis: str, keyword: str) -> np.ndarray:
        """Dense (|hypothesis| x |keyword|) substitution-cost matrix."""
        costs = np.empty((len(hypothesis), len(keyword)), dtype=np.float64)
        for i, hc in enumerate(hypothesis):
            for j, kc in enumerate(keyword):
                costs[i, j] = self.cost(kind, hc, kc)
        return costs

    def __len__(self) -> int:
        return len(self._memo)


def substitution_cost(
    cache: CharSimCache, kind: SimilarityKind, c1: str, c2: str
) -> float:
    """Module-level alias of :meth:`CharSimCache.cost`."""
    return cache.cost(kind, c1, c2)
