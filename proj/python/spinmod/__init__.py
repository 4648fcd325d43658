"""Exact refined quantum invariants of plumbed 3-manifolds."""

import json as _json

from . import _spinmod
from ._spinmod import HypothesisError, InputError, signature

__all__ = [
    "HypothesisError",
    "InputError",
    "category",
    "check_axioms",
    "invariant",
    "moo",
    "signature",
    "structures",
    "verify",
]


def category(source):
    """Category data (builtin spec or JSON file path) as a dict."""
    return _json.loads(_spinmod.category_json(source))


def check_axioms(source):
    return _json.loads(_spinmod.check_axioms(source))


def invariant(category, forest, refine="", d=0, e_d=1, override=False):
    """wrt and an optional refined table for a forest given as text."""
    return _json.loads(_spinmod.invariant(category, forest, refine, d, e_d, override))


def structures(kind, matrix, d):
    return _json.loads(_spinmod.structures(kind, matrix, d))


def moo(matrix, m, xi_order, xi_power=1):
    return _json.loads(_spinmod.moo(matrix, m, xi_order, xi_power))


def verify(suite, category="", corpus_size=10, seed=7):
    return _json.loads(_spinmod.verify(suite, category, corpus_size, seed))
