"""Mean-variance-skewness-kurtosis portfolio fronts.

Thin layer over the native ``_mvsk`` extension. Return matrices are n x m
(one row per asset), lambdas are 4-sequences.
"""

import json as _json

from ._mvsk import (
    MomentModel,
    MvskError,
    build_grid,
    build_model,
    classify,
    domain_bounds,
    load_returns,
    project_cube,
    project_simplex,
    psi,
    read_model,
    region_volume,
    solve,
    solve_sparse,
    synthesize,
    write_model,
)
from ._mvsk import sweep_json as _sweep_json

__all__ = [
    "MomentModel",
    "MvskError",
    "build_grid",
    "build_model",
    "classify",
    "domain_bounds",
    "load_returns",
    "project_cube",
    "project_simplex",
    "psi",
    "read_model",
    "region_volume",
    "solve",
    "solve_sparse",
    "sweep",
    "synthesize",
    "write_model",
]


def sweep(model, s=10, **kwargs):
    """Run a lambda sweep and return the parsed sweep document (a dict)."""
    return _json.loads(_sweep_json(model, s, **kwargs))
