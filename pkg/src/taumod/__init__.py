"""Numerical library for modular transformations of isomonodromic tau functions
on the once-punctured torus: special functions, character-variety coordinate
maps, trinion parametrices, the non-autonomous elliptic Calogero-Moser flow,
the modular connection constant, and the c=1 / c->infinity modular kernels.
"""

from .precision import (
    BranchConvention,
    BranchCutError,
    ConvergenceError,
    DegenerateError,
    PoleError,
    PrecisionContext,
    ResonanceError,
    WorkingPrecision,
)

__all__ = [
    "BranchConvention",
    "BranchCutError",
    "ConvergenceError",
    "DegenerateError",
    "PoleError",
    "PrecisionContext",
    "ResonanceError",
    "WorkingPrecision",
]

__version__ = "0.1.0"
