import os
import subprocess
import sys

import numpy as np
import pytest

from jspg import kernels


class TestBackendSelection:
    @pytest.mark.parametrize(
        "flag,expected", [("0", "numpy"), ("1", "numba"), ("auto", "numba")]
    )
    def test_env_flag(self, flag, expected):
        env = dict(os.environ, JSPG_NUMBA=flag)
        out = subprocess.run(
            [sys.executable, "-c", "from jspg.kernels import BACKEND; print(BACKEND)"],
            env=env,
            capture_output=True,
            text=True,
            check=True,
        )
        assert out.stdout.strip() == expected

    def test_current_backend_is_valid(self):
        assert kernels.BACKEND in ("numba", "numpy")


class TestPathEquivalence:
    """The jitted kernels and their Python source must agree bit-for-bit."""

    def test_levenshtein(self):
        rng = np.random.default_rng(9)
        for _ in range(300):
            a = rng.integers(0, 5, size=rng.integers(0, 9))
            b = rng.integers(0, 5, size=rng.integers(0, 9))
            assert kernels.levenshtein_arr(a, b) == kernels._py_levenshtein(a, b)

    def test_lcs(self):
        rng = np.random.default_rng(10)
        for _ in range(300):
            a = rng.integers(0, 4, size=rng.integers(0, 9))
            b = rng.integers(0, 4, size=rng.integers(0, 9))
            assert kernels.lcs_length_arr(a, b) == kernels._py_lcs_length(a, b)

    def test_anchored_cost(self):
        rng = np.random.default_rng(11)
        for _ in range(300):
            n = int(rng.integers(0, 8))
            m = int(rng.integers(1, 5))
            costs = rng.random((n, m))
            jit_cost, jit_row = kernels.anchored_cost_arr(costs, 1.0)
            py_cost, py_row = kernels._py_anchored_cost(costs, 1.0)
            assert jit_cost == py_cost or (np.isinf(jit_cost) and np.isinf(py_cost))
            assert jit_row == py_row


class TestEncode:
    def test_roundtrip(self):
        arr = kernels.encode_text("语音ab1")
        assert arr.tolist() == [ord(c) for c in "语音ab1"]
        assert arr.dtype == np.int64

    def test_empty(self):
        assert kernels.encode_text("").shape == (0,)
