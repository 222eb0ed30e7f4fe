import json
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from condmon import _kernels_py, kernels

import oracles

try:
    from condmon import _kernels as _kernels_c
except ImportError:  # extension not built
    _kernels_c = None

BACKENDS = [_kernels_py] + ([_kernels_c] if _kernels_c is not None else [])


def pack(rows):
    m = max((len(r) for r in rows), default=0)
    fact = np.full((len(rows), max(m, 1)), -1, dtype=np.int32)
    for i, r in enumerate(rows):
        fact[i, : len(r)] = sorted(r)
    return fact, np.array([len(r) for r in rows], dtype=np.int32)


rows_st = st.lists(st.lists(st.integers(0, 6), max_size=7), min_size=1, max_size=14)


def components_oracle(rows, t):
    seen, comps = set(), 0
    for s in range(len(rows)):
        if s in seen:
            continue
        comps += 1
        stack = [s]
        seen.add(s)
        while stack:
            i = stack.pop()
            for j in range(len(rows)):
                if j not in seen and oracles.distance(rows[i], rows[j]) <= t:
                    seen.add(j)
                    stack.append(j)
    return comps


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.BACKEND)
@given(rows=rows_st)
def test_kernels_match_oracle(impl, rows):
    fact, lens = pack(rows)
    D = impl.distance_matrix(fact, lens)
    n = len(rows)
    for i in range(n):
        for j in range(n):
            assert D[i, j] == oracles.distance(rows[i], rows[j])
        assert list(impl.distance_row(fact, lens, i)) == list(D[i])
    assert impl.bottleneck(D) == oracles.catenary([tuple(r) for r in rows])
    for t in (0, 1, 2, 3):
        assert impl.components_at(fact, lens, t) == components_oracle(rows, t)


@pytest.mark.skipif(_kernels_c is None, reason="compiled extension not built")
@given(rows=rows_st)
def test_backends_agree(rows):
    fact, lens = pack(rows)
    a = _kernels_py.distance_matrix(fact, lens)
    b = _kernels_c.distance_matrix(fact, lens)
    assert np.array_equal(a, b)
    assert _kernels_py.bottleneck(a) == _kernels_c.bottleneck(b)


def test_selected_backend():
    expected = "python" if os.environ.get("CONDMON_PURE_PYTHON") == "1" or _kernels_c is None else "cython"
    assert kernels.BACKEND == expected


_SNIPPET = """
import json
from condmon import kernels, suites
r = suites.suite_cor53(ms=(3, 4))
print(json.dumps({"backend": kernels.BACKEND, "verdict": r.to_json()}))
"""


def test_pure_python_fallback_gives_same_verdict():
    out = {}
    for flag in ("0", "1"):
        env = dict(os.environ, CONDMON_PURE_PYTHON=flag)
        proc = subprocess.run([sys.executable, "-c", _SNIPPET], env=env, capture_output=True, text=True, check=True)
        out[flag] = json.loads(proc.stdout)
    assert out["1"]["backend"] == "python"
    assert out["0"]["verdict"] == out["1"]["verdict"]
    assert out["1"]["verdict"]["ok"]


def test_benchmark_script_runs():
    script = os.path.join(os.path.dirname(__file__), "..", "benchmarks", "bench_kernels.py")
    proc = subprocess.run([sys.executable, script, "--repeat", "1", "--json"], capture_output=True, text=True, check=True)
    rows = json.loads(proc.stdout)
    assert rows and all("python" in r for r in rows)
