"""Independent reference implementations used to pin expected values.

Nothing here shares code with the package: the edit distance is a plain
recursive enumeration, the alignment oracle enumerates every monotone
path through the cost grid, and the anchored reference composes a
classic DP edit distance with explicit end-point anchoring.
"""

from __future__ import annotations

import numpy as np


def brute_levenshtein(a: str, b: str) -> int:
    """Edit distance by full recursion; exponential, for short strings."""
    if not a:
        return len(b)
    if not b:
        return len(a)
    sub = brute_levenshtein(a[1:], b[1:]) + (0 if a[0] == b[0] else 1)
    dele = brute_levenshtein(a[1:], b) + 1
    ins = brute_levenshtein(a, b[1:]) + 1
    return min(sub, dele, ins)


def brute_lcs(a: str, b: str) -> int:
    if not a or not b:
        return 0
    if a[0] == b[0]:
        return 1 + brute_lcs(a[1:], b[1:])
    return max(brute_lcs(a[1:], b), brute_lcs(a, b[1:]))


def enumerate_anchored_cost(costs: np.ndarray, gap: float = 1.0) -> float:
    """Minimum anchored alignment cost by exhaustive path enumeration.

    A path starts at (r, 0) for any hypothesis row r (free start), moves
    through the grid with

      * diagonal  (i, j) -> (i+1, j+1), paying costs[i, j],
      * vertical  (i, j) -> (i+1, j),   paying gap (only for j >= 1),
      * horizontal(i, j) -> (i, j+1),   paying gap, forbidden when the
        target column is the first or the last keyword position,

    and finishes the moment it reaches the last column. Returns inf when
    no path exists.
    """
    n, m = costs.shape
    best = [np.inf]

    def walk(i: int, j: int, acc: float) -> None:
        if acc >= best[0]:
            return
        if j == m:
            best[0] = acc
            return
        if i < n:
            walk(i + 1, j + 1, acc + costs[i, j])  # diagonal into column j+1
            if j >= 1:
                walk(i + 1, j, acc + gap)  # vertical
        if 1 < j + 1 < m:
            walk(i, j + 1, acc + gap)  # horizontal into column j+1
    for start in range(n + 1):
        walk(start, 0, 0.0)
    return best[0]


def _classic_ed(w: str, q: str, cost_of) -> float:
    """Plain weighted edit distance (both ends free to delete/insert)."""
    n, m = len(q), len(w)
    d = [[0.0] * (m + 1) for _ in range(n + 1)]
    for j in range(1, m + 1):
        d[0][j] = float(j)
    for i in range(1, n + 1):
        d[i][0] = float(i)
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            d[i][j] = min(
                d[i - 1][j - 1] + cost_of(q[i - 1], w[j - 1]),
                d[i - 1][j] + 1.0,
                d[i][j - 1] + 1.0,
            )
    return d[n][m]


def anchored_reference(w: str, q: str, cost_of=None) -> float:
    """Anchored-substring alignment cost built from first principles.

    The first keyword character must align against some hypothesis
    position i, the last against some j >= i (the same one iff |w| = 1),
    and everything in between is a classic edit distance. Minimizes over
    all (i, j) pairs.
    """
    if cost_of is None:
        cost_of = lambda a, b: 0.0 if a == b else 1.0
    n, m = len(q), len(w)
    if m == 1:
        return min((cost_of(q[i], w[0]) for i in range(n)), default=np.inf)
    best = np.inf
    for i in range(n):
        for j in range(i + 1, n):
            total = (
                cost_of(q[i], w[0])
                + cost_of(q[j], w[m - 1])
                + _classic_ed(w[1:-1], q[i + 1 : j], cost_of)
            )
            best = min(best, total)
    return best
