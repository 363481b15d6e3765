"""Finite-dimensional weak Hopf algebras."""

import json

from ._core import (
    WeakHopfAlgebra,
    WhakitError,
    dual,
    dumps,
    fixture_kinds,
    haar_integral,
    is_weak_kac,
    load,
    loads,
    make_fixture,
    markov_index,
    perturb_text,
    smash_product_blocks,
    translation_crossed_product_blocks,
    validate,
    validate_text,
)
from ._core import analyze_json as _analyze_json


def analyze(text, tol=1e-9):
    """Run the analysis pipeline on a structure-constant document and return the report as a dict."""
    return json.loads(_analyze_json(text, tol))


__all__ = [
    "WeakHopfAlgebra",
    "WhakitError",
    "analyze",
    "dual",
    "dumps",
    "fixture_kinds",
    "haar_integral",
    "is_weak_kac",
    "load",
    "loads",
    "make_fixture",
    "markov_index",
    "perturb_text",
    "smash_product_blocks",
    "translation_crossed_product_blocks",
    "validate",
    "validate_text",
]
