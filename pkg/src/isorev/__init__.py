"""Reversibility and strong reversibility of unitary affine isometries."""
from .classify import Verdict, classify, exceptional_family_detect
from .errors import IsorevError
from .isometry import GroupTag, Isometry, compose, conjugate, identity, inverse
from .normalform import NormalForm, normalize
from .reverser import ReverserWitness, verify_witness
from .scalar import Quaternion

__version__ = "0.1.0"

__all__ = [
    "GroupTag", "Isometry", "NormalForm", "Quaternion", "ReverserWitness", "Verdict", "IsorevError",
    "classify", "compose", "conjugate", "exceptional_family_detect", "identity", "inverse",
    "normalize", "verify_witness",
]
