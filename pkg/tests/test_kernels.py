import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from isorev import kernels
from isorev.kernels import from_pair, qmatmul_loop, qmatmul_numpy, qmul_loop, qmul_numpy, to_pair


def test_basis_table_both_paths():
    e = np.eye(4)
    one, i, j, k = e
    for mul in (qmul_numpy, qmul_loop):
        assert np.array_equal(mul(i, j), k)
        assert np.array_equal(mul(j, k), i)
        assert np.array_equal(mul(k, i), j)
        assert np.array_equal(mul(j, i), -k)
        assert np.array_equal(mul(one, k), k)


@given(st.integers(0, 10_000), st.integers(1, 6), st.integers(1, 6), st.integers(1, 6))
def test_paths_agree(seed, n, m, p):
    rng = np.random.default_rng(seed)
    a, b = rng.standard_normal((n, m, 4)), rng.standard_normal((m, p, 4))
    assert np.allclose(qmatmul_numpy(a, b), qmatmul_loop(a, b), atol=1e-12)
    x, y = rng.standard_normal((n, 4)), rng.standard_normal((4,))
    assert np.allclose(qmul_numpy(x, y), qmul_loop(x, y), atol=1e-14)


def test_pair_round_trip(rng):
    q = rng.standard_normal((3, 2, 4))
    assert np.array_equal(from_pair(*to_pair(q)), q)


def test_loop_shape_check():
    with pytest.raises(ValueError):
        qmatmul_loop(np.zeros((2, 3, 4)), np.zeros((2, 2, 4)))


def test_backend_reports_flag():
    assert kernels.backend() in ("numpy", "numba")
    code = "from isorev import kernels; print(kernels.backend())"
    env = dict(os.environ, ISOREV_JIT="0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
    if kernels.loop_is_compiled():
        env["ISOREV_JIT"] = "1"
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        assert out.stdout.strip() == "numba"
