"""Shared hypothesis strategies."""
import numpy as np
from hypothesis import strategies as st

finite = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)
quats = st.lists(finite, min_size=4, max_size=4).map(np.array)
seeds = st.integers(min_value=0, max_value=2**31 - 1)
dims = st.integers(min_value=1, max_value=5)


def unit(q):
    n = np.linalg.norm(q)
    return q / n if n > 1e-3 else np.array([1.0, 0, 0, 0])
