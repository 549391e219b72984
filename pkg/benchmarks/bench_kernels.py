#!/usr/bin/env python3
"""Compare the numba and pure-numpy kernel backends.

Runs itself once per backend in a subprocess (the backend is fixed at
import time by JSPG_NUMBA) and times the three DP kernels plus a full
dictionary scan. Numbers are wall-clock medians over repeats.

    python benchmarks/bench_kernels.py            # both backends
    python benchmarks/bench_kernels.py --backend 1  # this process only
"""

from __future__ import annotations

import argparse
import os
import statistics
import subprocess
import sys
import time


def bench_one_backend(repeats: int) -> None:
    import numpy as np

    from jspg.align import HypothesisSet, Keyword
    from jspg.chardata import CharRecord, ResourceTable
    from jspg.charsim import CharSimCache
    from jspg.fusion import Dictionary, RetrievalConfig, retrieve_topk
    from jspg.kernels import BACKEND, anchored_cost_arr, levenshtein_arr

    rng = np.random.default_rng(12345)

    # synthetic resource table: 400 chars, 90 readings
    readings = [f"{c}a{t}" for c in "bpmfdtnlgkh" for t in "1234"] + [
        f"zh{f}{t}" for f in ("ang", "ong", "ai") for t in "1234"
    ]
    chars = [chr(0x4E00 + i) for i in range(400)]
    records = {
        c: CharRecord(c, (readings[rng.integers(len(readings))],)) for c in chars
    }
    table = ResourceTable(records=records)
    cache = CharSimCache(table)

    def timeit(fn, number: int) -> float:
        samples = []
        for _ in range(repeats):
            start = time.perf_counter()
            for _ in range(number):
                fn()
            samples.append((time.perf_counter() - start) / number)
        return statistics.median(samples)

    # warm-up (JIT compilation happens here on the numba path)
    a = rng.integers(0, 30, size=8)
    b = rng.integers(0, 30, size=6)
    levenshtein_arr(a, b)
    anchored_cost_arr(rng.random((8, 4)), 1.0)

    t_ld = timeit(lambda: levenshtein_arr(a, b), 5000)

    costs = rng.random((10, 4))
    t_sw = timeit(lambda: anchored_cost_arr(costs, 1.0), 5000)

    keywords = Dictionary.from_texts(
        "".join(chars[i] for i in rng.integers(400, size=3)) + chars[k % 400]
        for k in range(1000)
    )
    hyp = HypothesisSet("bench", ("".join(chars[i] for i in rng.integers(400, size=12)),))
    cfg = RetrievalConfig(top_k=10, semantic_enabled=False)
    t_scan = timeit(lambda: retrieve_topk(cache, None, keywords, hyp, cfg), 1)

    print(f"backend: {BACKEND}")
    print(f"  levenshtein (8x6 symbols)     {t_ld * 1e6:8.2f} us")
    print(f"  anchored alignment (10x4)     {t_sw * 1e6:8.2f} us")
    print(f"  1000-keyword dictionary scan  {t_scan * 1e3:8.2f} ms")


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--backend", choices=["0", "1"], default=None,
                        help="bench only this JSPG_NUMBA setting in-process")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    if args.backend is not None:
        os.environ.setdefault("JSPG_NUMBA", args.backend)
        bench_one_backend(args.repeats)
        return 0

    for flag in ("1", "0"):
        env = dict(os.environ, JSPG_NUMBA=flag)
        subprocess.run(
            [sys.executable, __file__, "--backend", flag, "--repeats", str(args.repeats)],
            env=env,
            check=True,
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
