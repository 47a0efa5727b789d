import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from isorev import jsonio
from isorev.errors import MalformedInput
from isorev.isometry import GroupTag
from isorev.oracle import random_group_element

from strategies import seeds


@given(st.sampled_from(["sp", "u", "su"]), st.booleans(), st.integers(1, 4), seeds)
def test_isometry_round_trip_exact(fam, affine, n, seed):
    g = random_group_element(GroupTag(fam, affine, n), seed)
    text = json.dumps(jsonio.isometry_to_json(g))
    back = jsonio.isometry_from_json(json.loads(text))
    assert back.tag == g.tag
    assert np.array_equal(back.linear, g.linear) and np.array_equal(back.translation, g.translation)


def test_scalar_encodings():
    assert jsonio.encode_array(np.array([1 + 2j]), "C") == [[1.0, 2.0]]
    assert jsonio.encode_array(np.array([[1.0, 2, 3, 4]]), "H") == [[1.0, 2.0, 3.0, 4.0]]
    assert np.array_equal(jsonio.decode_array([1, 2], "C", 1), [1, 2])


@pytest.mark.parametrize("obj", [
    [],
    {"group": "u"},
    {"group": "so", "n": 1, "linear": [[1]]},
    {"group": "u", "n": 0, "linear": []},
    {"group": "u", "n": 2, "linear": [[[1, 0]]]},
    {"group": "u", "n": 1, "linear": [["a"]]},
    {"group": "u", "n": 1, "affine": True, "linear": [[1]], "translation": [1, 2]},
    {"group": "u", "n": 1, "affine": False, "linear": [[1]], "translation": [[1, 0]]},
])
def test_malformed(obj):
    with pytest.raises(MalformedInput):
        jsonio.isometry_from_json(obj)
