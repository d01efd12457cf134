"""Evaluation context, error types and branch conventions shared by all modules."""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class WorkingPrecision(Enum):
    DOUBLE = "double"
    EXTENDED = "extended"


class BranchConvention(Enum):
    """How fractional powers of -1 are resolved in the trinion parametrices.

    The parametrices are continued so that arg(-1) = +pi; PRINCIPAL keeps
    numpy's principal branch everywhere else.
    """

    PRINCIPAL = "principal"
    ARG_MINUS_ONE_PLUS_PI = "plus_pi"


class ConvergenceError(RuntimeError):
    """A series or product failed to meet the target tolerance within max_terms."""


class PoleError(ValueError):
    """Evaluation point is too close to a pole or lattice point."""


class DegenerateError(ValueError):
    """Parameter combination degenerates the requested map (e.g. sin 2*pi*a = 0)."""


class ResonanceError(ValueError):
    """Gamma-function argument hit a non-positive integer in a connection formula."""


class BranchCutError(ValueError):
    """Evaluation point lies on a logarithmic cut with no side specified."""


@dataclass(frozen=True)
class PrecisionContext:
    """Knobs controlling series truncation and derivative checks.

    tol: target absolute residual for series tails.
    max_terms: hard cutoff on one-sided series length.
    fd_step: step used by finite-difference derivative cross-checks.
    """

    tol: float = 1e-12
    max_terms: int = 64
    fd_step: float = 1e-6
    working_precision: WorkingPrecision = WorkingPrecision.DOUBLE
    pole_threshold: float = 1e-8
    branch: BranchConvention = BranchConvention.ARG_MINUS_ONE_PLUS_PI
    warnings: list = field(default_factory=list, compare=False)

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_terms < 8:
            raise ValueError("max_terms must be at least 8")
        if not self.fd_step > 0:
            raise ValueError("fd_step must be positive")

    @property
    def extended(self) -> bool:
        return self.working_precision is WorkingPrecision.EXTENDED

    def warn(self, op: str, message: str) -> None:
        self.warnings.append({"op": op, "message": message})


DEFAULT_CTX = PrecisionContext()
