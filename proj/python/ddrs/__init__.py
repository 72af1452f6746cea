"""Rewriting workbench for integer arithmetic rule systems.

Thin convenience layer over the compiled `_core` extension. Report-producing
operations return parsed JSON documents (dicts).
"""

import json as _json

from ._core import (  # noqa: F401
    all_normal_forms,
    builtins,
    convert,
    dump_system,
    encode,
    enumerate_terms,
    eval_term,
    find_redexes,
    grammar_contains,
    load_system_text,
    normal_form,
    rule_count,
    status,
)
from . import _core as _c

DEFAULT_SEED = 20160809


def normalize(system, term, strategy="innermost", seed=0, step_limit=1000000):
    """Traced normalization; returns the trace-v1 document as a dict."""
    return _json.loads(_c.normalize_json(system, term, strategy, seed, step_limit))


def check_soundness(system, trials=100, seed=DEFAULT_SEED):
    return _json.loads(_c.check_soundness_json(system, trials, seed))


def check_ground_confluence(system, max_size=3, node_budget=5000):
    return _json.loads(_c.check_ground_confluence_json(system, max_size, node_budget))


def check_ring_weights(max_size=4):
    return _json.loads(_c.check_ring_weights_json(max_size))
