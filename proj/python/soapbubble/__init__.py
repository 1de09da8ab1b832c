"""Planar soap-bubble complexes: construction, regularity checks, moves and minimization."""

import json

from ._core import (
    Complex,
    InfeasibleError,
    InputError,
    MinimizeResult,
    MoveReport,
    NumericalError,
    PreconditionError,
    apply_move,
    circle,
    circle_with_radii,
    flower,
    from_json,
    minimize,
    ngon,
    standard_double,
    standard_quadruple,
    standard_triple,
    upper_bound_length,
    verify_lemmas,
)


def validate(c, tol=1e-9):
    """Regularity report as a dict."""
    return json.loads(c.validation_json(tol))


def measure(c):
    """Perimeter, areas, pressures and per-face data as a dict."""
    return json.loads(c.measurements_json())


__all__ = [name for name in dir() if not name.startswith("_") and name != "json"]
