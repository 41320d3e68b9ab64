"""Certified smooth solutions of parametrized Bezout equations on the disc."""

import json as _json
import os as _os

from ._corona import (
    CoronaError,
    Solution,
    load_solution,
    run_cli,
    solve_point,
    sup_disc,
    xgcd,
)
from . import _corona

__all__ = [
    "CoronaError",
    "Solution",
    "check",
    "family_sup_norm",
    "delta_lower",
    "load_config",
    "load_solution",
    "run_cli",
    "solve",
    "solve_point",
    "sup_disc",
    "xgcd",
]


def load_config(path):
    with open(path, encoding="utf-8") as fh:
        return _json.load(fh)


def _family(data):
    if isinstance(data, (str, _os.PathLike)):
        data = load_config(data)
    return data.get("family", data), data.get("solver")


def delta_lower(config):
    family, _ = _family(config)
    return _corona.delta_lower_json(_json.dumps(family))


def family_sup_norm(config):
    family, _ = _family(config)
    return _corona.family_sup_norm_json(_json.dumps(family))


def check(config):
    """True when the corona condition is certified for the config."""
    return delta_lower(config)["lo"] > 0.0


def solve(config, **settings):
    """Solve a config (dict or path); keyword arguments override solver settings."""
    family, solver = _family(config)
    merged = dict(solver or {})
    merged.update(settings)
    return _corona.solve_json(_json.dumps(family), _json.dumps(merged))
