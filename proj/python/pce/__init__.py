"""Python interface to the period-constant engine.

Thin wrapper over the compiled module: structured results cross the boundary
as JSON strings and are decoded into plain dicts here.
"""

import json

from ._pce import (  # noqa: F401
    builtin_conditions,
    builtin_systems,
    period,
    real_root_count,
    tau_at,
)
from . import _pce


def tau(system, condition="", max_k=3, reduce=False):
    """Symbolic period constants tau_1..tau_max_k as a dict."""
    return json.loads(_pce.tau_json(system, condition, max_k, reduce))


def run_case(name, starts=0, seed=1, digits=60):
    """Full case workflow; returns the structured report as a dict."""
    return json.loads(_pce.run_case_json(name, starts, seed, digits))


def resultant(p, q, var):
    """Exact resultant of two polynomials given as dicts (variables/terms)."""
    return json.loads(_pce.resultant_json(json.dumps(p), json.dumps(q), var))


__all__ = [
    "builtin_conditions",
    "builtin_systems",
    "period",
    "real_root_count",
    "resultant",
    "run_case",
    "tau",
    "tau_at",
]
