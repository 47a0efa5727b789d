"""JSON encodings.

Complex scalars are ``[re, im]``, quaternions ``[a0, a1, a2, a3]``; matrices
are nested row-major lists of those. Floats go through ``json`` unchanged,
which keeps full double precision (``repr`` round-trips).
"""
from __future__ import annotations

import json
from typing import Any

import numpy as np

from . import matlin as ml
from .errors import MalformedInput
from .isometry import FAMILIES, GroupTag, Isometry


def encode_array(x: np.ndarray, field: str) -> list:
    x = np.asarray(x)
    if field == "H":
        return np.asarray(x, dtype=float).tolist()
    x = np.asarray(x, dtype=np.complex128)
    return np.stack([x.real, x.imag], axis=-1).tolist()


def decode_array(data, field: str, ndim: int) -> np.ndarray:
    """Inverse of :func:`encode_array`; bare reals are accepted as scalars."""
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise MalformedInput(f"not a numeric array: {exc}") from None
    width = 4 if field == "H" else 2
    if arr.ndim == ndim:
        pad = np.zeros(arr.shape + (width,))
        pad[..., 0] = arr
        arr = pad
    if arr.ndim != ndim + 1 or arr.shape[-1] != width:
        raise MalformedInput(f"expected {ndim}-d array of {width}-component scalars, got shape {arr.shape}")
    if field == "H":
        return arr
    return arr[..., 0] + 1j * arr[..., 1]


def isometry_to_json(g: Isometry) -> dict:
    return {
        "group": g.tag.family,
        "affine": g.tag.affine,
        "n": g.n,
        "linear": encode_array(g.linear, g.field),
        "translation": encode_array(g.translation, g.field),
    }


def isometry_from_json(obj: Any) -> Isometry:
    if not isinstance(obj, dict):
        raise MalformedInput("isometry must be a JSON object")
    missing = {"group", "n", "linear"} - obj.keys()
    if missing:
        raise MalformedInput(f"missing keys: {sorted(missing)}")
    family = str(obj["group"]).lower()
    if family not in FAMILIES:
        raise MalformedInput(f"unknown group {obj['group']!r}")
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MalformedInput("n must be a positive integer")
    affine = bool(obj.get("affine", obj.get("translation") is not None))
    tag = GroupTag(family, affine, n)
    A = decode_array(obj["linear"], tag.field, 2)
    if A.shape[:2] != (n, n):
        raise MalformedInput(f"linear part has shape {A.shape[:2]}, expected {(n, n)}")
    v = None
    if obj.get("translation") is not None:
        v = decode_array(obj["translation"], tag.field, 1)
        if v.shape[0] != n:
            raise MalformedInput(f"translation has length {v.shape[0]}, expected {n}")
        if not affine and ml.maxnorm(v) > 0:
            raise MalformedInput("linear element with nonzero translation")
        if not affine:
            v = None
    try:
        return Isometry(tag, A, v)
    except ValueError as exc:
        raise MalformedInput(str(exc)) from None


def normal_form_to_json(nf) -> dict:
    return {
        "blocks": nf.spectrum.to_json(),
        "diagonal": encode_array(np.diagonal(nf.diagonal, axis1=0, axis2=1).T
                                 if nf.tag.field == "H" else np.diag(nf.diagonal), nf.tag.field),
        "v": encode_array(nf.v, nf.tag.field),
        "conjugator": isometry_to_json(nf.conjugator),
    }


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def load_isometry(path: str) -> Isometry:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise MalformedInput(f"{path}: {exc}") from None
    return isometry_from_json(obj)


def save_json(obj: Any, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj) + "\n")
