"""Exact gap statistics for linear sequences modulo P.

Every function takes and returns plain Python data; configurations use the
same JSON layout as the command-line tool.
"""

import json

from . import _core
from ._core import InputError, InvariantViolation, PrecisionExhausted

__all__ = [
    "InputError",
    "InvariantViolation",
    "PrecisionExhausted",
    "bound_3c",
    "classical",
    "four_gap_search",
    "nearest",
    "oracle_check",
    "random_config",
    "run",
    "sweep",
]


def run(config, digits=30):
    """Full report for a gap configuration or a preset dict."""
    return json.loads(_core.run(json.dumps(config), digits))


def classical(alpha, N, digits=30):
    """Gaps of {m alpha}, 0 < m <= N. alpha: "golden", "sqrt:2", "nthroot:15:3", ..."""
    return json.loads(_core.classical(alpha, N, digits))


def nearest(alpha, M, convention="interval", digits=30):
    """Gaps of ||m alpha||, 1 <= m <= M, arranged in [0, 1/2]."""
    return json.loads(_core.nearest(alpha, M, convention, digits))


def four_gap_search(mmax=5000, alpha="nthroot:15:3", digits=12):
    return json.loads(_core.four_gap_search(mmax, alpha, digits))


def sweep(spec, workers=1, digits=30):
    """One row dict per parameter value."""
    return json.loads(_core.sweep(json.dumps(spec), workers, digits))


def oracle_check(config, digits=150, agree_digits=100):
    return json.loads(_core.oracle_check(json.dumps(config), digits, agree_digits))


def bound_3c(config):
    return json.loads(_core.bound_3c(json.dumps(config)))


def random_config(seed, max_N=500):
    return json.loads(_core.random_config(seed, max_N))
