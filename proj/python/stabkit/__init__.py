"""Python bindings for the stabkit core.

Rationals are returned as ``fractions.Fraction``; rational arguments accept
``Fraction``, ``int`` or ``"p/q"`` strings.
"""

from fractions import Fraction

from ._stabkit import *  # noqa: F401,F403
from ._stabkit import __version__, StabkitError, run_experiment as _run_experiment, run_family_trend as _run_family_trend

import json as _json


def run_experiment(config, timing=False):
    """Run a batch experiment; ``config`` is a dict or a JSON string."""
    if not isinstance(config, str):
        config = _json.dumps(config)
    return _run_experiment(config, timing)


def run_family_trend(config):
    """Trend table across a group family; ``config`` is a dict or a JSON string."""
    if not isinstance(config, str):
        config = _json.dumps(config)
    return _run_family_trend(config)
