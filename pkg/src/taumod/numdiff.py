"""Small numerical-derivative helpers used by verification routines.

Central differences are used where a spec-level check prescribes them;
`central4` adds one Richardson step for headroom on tight tolerances.
"""
from __future__ import annotations

from typing import Callable


def central(f: Callable, x0: complex, h: float) -> complex:
    return (f(x0 + h) - f(x0 - h)) / (2 * h)


def central4(f: Callable, x0: complex, h: float = 1e-4) -> complex:
    d1 = (f(x0 + h) - f(x0 - h)) / (2 * h)
    d2 = (f(x0 + h / 2) - f(x0 - h / 2)) / h
    return (4 * d2 - d1) / 3


def second(f: Callable, x0: complex, h: float) -> complex:
    return (f(x0 + h) - 2 * f(x0) + f(x0 - h)) / (h * h)


def mixed_second(f: Callable[[complex, complex], complex], x0: complex, y0: complex, h: float) -> complex:
    return (f(x0 + h, y0 + h) - f(x0 + h, y0 - h) - f(x0 - h, y0 + h) + f(x0 - h, y0 - h)) / (4 * h * h)
