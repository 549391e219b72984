"""Dynamic-programming kernels behind the similarity and alignment code.

All three kernels operate on plain numpy arrays so they can be compiled
with numba. Backend selection happens once at import time and is driven
by the ``JSPG_NUMBA`` environment variable:

* unset or ``auto`` -- use numba when it imports, else pure numpy;
* ``1`` / ``true`` / ``on`` -- require numba (ImportError surfaces);
* ``0`` / ``false`` / ``off`` -- force the pure-numpy path.

Both paths run the identical Python source (the numba path is the same
function passed through ``njit``), so results are bit-for-bit equal.
``benchmarks/bench_kernels.py`` compares the two.
"""

from __future__ import annotations

import os

import numpy as np


def _py_levenshtein(a: np.ndarray, b: np.ndarray) -> int:
    """Unit-cost edit distance between two int-encoded symbol sequences."""
    n = a.shape[0]
    m = b.shape[0]
    if m == 0:
        return n
    prev = np.arange(m + 1, dtype=np.int64)
    cur = np.empty(m + 1, dtype=np.int64)
    for i in range(1, n + 1):
        cur[0] = i
        ai = a[i - 1]
        for j in range(1, m + 1):
            best = prev[j - 1] + (0 if ai == b[j - 1] else 1)
            alt = prev[j] + 1
            if alt < best:
                best = alt
            alt = cur[j - 1] + 1
            if alt < best:
                best = alt
            cur[j] = best
        prev, cur = cur, prev
    return int(prev[m])


def _py_lcs_length(a: np.ndarray, b: np.ndarray) -> int:
    """Length of the longest common subsequence of two int sequences."""
    n = a.shape[0]
    m = b.shape[0]
    if n == 0 or m == 0:
        return 0
    prev = np.zeros(m + 1, dtype=np.int64)
    cur = np.zeros(m + 1, dtype=np.int64)
    for i in range(1, n + 1):
        ai = a[i - 1]
        for j in range(1, m + 1):
            if ai == b[j - 1]:
                cur[j] = prev[j - 1] + 1
            elif prev[j] >= cur[j - 1]:
                cur[j] = prev[j]
            else:
                cur[j] = cur[j - 1]
        prev, cur = cur, prev
    return int(prev[m])


def _py_anchored_cost(costs: np.ndarray, gap: float) -> tuple[float, int]:
    """Minimum anchored alignment cost of a keyword against a hypothesis.

    ``costs[i, j]`` is the substitution cost of hypothesis character i
    against keyword character j (0-based). The DP runs over the implicit
    matrix D with D[i, 0] = 0 (the alignment may start anywhere in the
    hypothesis) and D[0, j] = inf for j >= 1, using

        D[i, j] = min(D[i-1, j-1] + costs[i-1, j-1],   # align the pair
                      D[i-1, j] + gap,                  # skip a hypothesis char
                      D[i, j-1] + gap)                  # skip a keyword char

    where the keyword-skip move is forbidden for the first and last
    keyword positions, so the whole keyword must be consumed between two
    aligned hypothesis characters.

    Returns ``(cost, end_row)``: the minimum of the last column and the
    smallest 1-based hypothesis row attaining it. ``(inf, 0)`` when no
    feasible alignment exists (hypothesis shorter than two characters
    against a multi-character keyword, or empty).
    """
    n = costs.shape[0]
    m = costs.shape[1]
    best = np.inf
    best_row = 0
    prev = np.empty(m + 1, dtype=np.float64)
    cur = np.empty(m + 1, dtype=np.float64)
    prev[0] = 0.0
    for j in range(1, m + 1):
        prev[j] = np.inf
    for i in range(1, n + 1):
        cur[0] = 0.0
        for j in range(1, m + 1):
            v = prev[j - 1] + costs[i - 1, j - 1]
            alt = prev[j] + gap
            if alt < v:
                v = alt
            if 1 < j < m:
                alt = cur[j - 1] + gap
                if alt < v:
                    v = alt
            cur[j] = v
        if cur[m] < best:
            best = cur[m]
            best_row = i
        prev, cur = cur, prev
    return best, best_row


def _resolve_backend() -> str:
    flag = os.environ.get("JSPG_NUMBA", "auto").strip().lower()
    if flag in ("0", "false", "off", "no"):
        return "numpy"
    if flag in ("1", "true", "on", "yes"):
        import numba  # noqa: F401  -- fail loudly when forced on

        return "numba"
    try:
        import numba  # noqa: F401
    except ImportError:
        return "numpy"
    return "numba"


BACKEND = _resolve_backend()

if BACKEND == "numba":
    from numba import njit

    _jit = njit(cache=True, nogil=True)
    levenshtein_arr = _jit(_py_levenshtein)
    lcs_length_arr = _jit(_py_lcs_length)
    anchored_cost_arr = _jit(_py_anchored_cost)
else:
    levenshtein_arr = _py_levenshtein
    lcs_length_arr = _py_lcs_length
    anchored_cost_arr = _py_anchored_cost


def encode_text(text: str) -> np.ndarray:
    """Encode a string as an int64 array of Unicode scalar values."""
    return np.fromiter(map(ord, text), dtype=np.int64, count=len(text))
