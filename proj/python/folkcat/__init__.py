"""Exact decision procedures for the folklore model structure on Cat.

Thin wrapper over the C++ core: classification of functors into the model
classes, constructive factorizations, lifting problems, enriched corner
checks, weighted limits and the seeded verification suites. Reporting entry
points return plain dicts decoded from the core's deterministic JSON.
"""

import json as _json

from ._core import (
    Diagram,
    Document,
    FinCat,
    FinFunctor,
    FormatError,
    InternalFault,
    ShapeError,
    SizeGuardError,
    Weight,
    chaotic,
    compose,
    identity,
    named,
    parse_document,
    parse_file,
)
from . import _core


def classify(f):
    """Full model-class report for a functor, as a dict."""
    return _json.loads(_core.classify_json(f))


def factor(f, mode="we-fib"):
    """Factorization witness; mode is we-fib, cof-trivfib or trivcof-fib."""
    return _json.loads(_core.factor_json(f, mode))


def lift(i, p, top, bottom):
    """Solves the lifting problem; returns the lift as a dict, or None."""
    out = _core.lift_json(i, p, top, bottom)
    return None if out is None else _json.loads(out)


def corner(i, p):
    return _json.loads(_core.corner_json(i, p))


def pseudolimit(f):
    return _json.loads(_core.pseudolimit_json(f))


def pseudocolimit(f):
    return _json.loads(_core.pseudocolimit_json(f))


def weighted_limit(weight, diagram):
    return _json.loads(_core.weighted_limit_json(weight, diagram))


def verify(suite, **kwargs):
    """Runs a named verification suite and returns its report as a dict."""
    return _json.loads(_core.verify_json(suite, **kwargs))


__all__ = [
    "Diagram", "Document", "FinCat", "FinFunctor", "FormatError",
    "InternalFault", "ShapeError", "SizeGuardError", "Weight",
    "chaotic", "classify", "compose", "corner", "factor", "identity",
    "lift", "named", "parse_document", "parse_file", "pseudocolimit",
    "pseudolimit", "verify", "weighted_limit",
]
